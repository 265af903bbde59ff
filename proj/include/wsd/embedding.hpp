#ifndef WSD_EMBEDDING_HPP
#define WSD_EMBEDDING_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "wsd/corpus.hpp"
#include "wsd/matrix.hpp"

namespace wsd {

struct TrainingConfig {
    int32_t dimension = 100;
    int32_t window = 5;
    int64_t min_count = 10;
    int32_t epochs = 5;
    int32_t negative_samples = 5;
    float learning_rate = 0.025f;
    float learning_rate_min = 0.0001f;
    uint64_t seed = 1;
    int32_t workers = 1;          // 1 = bit-reproducible sequential mode
    bool dynamic_window = true;   // per-center window shrink, word2vec style
    double subsample = 0.0;       // frequent-word subsampling threshold; 0 = off
    int64_t unigram_table_size = 1'000'000;

    void validate() const; // throws ConfigError
};

// Dual-space CBOW model: IN rows feed context averages, OUT rows are the
// prediction targets of negative sampling.
class CbowModel {
public:
    CbowModel() = default;
    CbowModel(Vocabulary vocab, int32_t dimension);

    // Seeded uniform [-0.5, 0.5]/D init for both matrices.
    static CbowModel initialize(Vocabulary vocab, int32_t dimension, uint64_t seed);

    const Vocabulary& vocab() const { return vocab_; }
    int32_t dimension() const { return dim_; }

    Matrix& in() { return in_; }
    const Matrix& in() const { return in_; }
    Matrix& out() { return out_; }
    const Matrix& out() const { return out_; }

    const TrainingConfig& config() const { return config_; }
    void set_config(const TrainingConfig& c) { config_ = c; }

    // Binary round-trip: magic, version, V, D, config echo, vocabulary,
    // then both matrices as little-endian f32.
    void save(const std::string& path) const;
    static CbowModel load(const std::string& path);

    // word2vec-style text dump of the IN matrix: "V D" header, then one
    // "word v1 .. vD" line per row.
    void export_text(const std::string& path) const;

private:
    Vocabulary vocab_;
    int32_t dim_ = 0;
    Matrix in_;
    Matrix out_;
    TrainingConfig config_;
};

// One negative-sampling step evaluated in double precision. Gradients are
// accumulated per distinct row id; duplicated context or negative ids fold
// into a single entry.
struct CbowStep {
    double loss = 0.0;
    std::vector<std::pair<int32_t, std::vector<double>>> in_grads;
    std::vector<std::pair<int32_t, std::vector<double>>> out_grads;
};

CbowStep cbow_step_loss_and_gradients(const CbowModel& model, int32_t center,
                                      std::span<const int32_t> context,
                                      std::span<const int32_t> negatives);

// Same objective on raw double rows; the finite-difference checks drive this
// directly. context_rows holds one row per context occurrence (duplicates
// appear as separate copies).
double cbow_step_loss(const std::vector<std::vector<double>>& context_rows,
                      const std::vector<double>& center_row,
                      const std::vector<std::vector<double>>& negative_rows);

struct TrainStats {
    int64_t trained_words = 0;
    std::vector<double> epoch_mean_loss;
    double wall_seconds = 0.0;
};

// SGD over the encoded corpus. workers > 1 shards documents round-robin and
// updates rows without locks (classic lossy-race style); workers == 1 is
// deterministic for a fixed seed.
TrainStats train_inplace(CbowModel& model, const EncodedCorpus& corpus,
                         const TrainingConfig& config);

CbowModel train_cbow(const EncodedCorpus& corpus, const Vocabulary& vocab,
                     const TrainingConfig& config, TrainStats* stats = nullptr);

// Mean step loss over the corpus without touching the model. Negatives and
// window shrink draw from `seed`, so the same call is repeatable.
double evaluate_mean_loss(const CbowModel& model, const EncodedCorpus& corpus,
                          const TrainingConfig& config, uint64_t seed);

enum class Space { In, Out };

struct Neighbor {
    int32_t id = -1;
    std::string word;
    double similarity = 0.0;
};

// Exhaustive top-k cosine scan of one embedding space. Ties break toward the
// smaller word id. Throws DomainError on a zero query vector.
std::vector<Neighbor> nearest_neighbors(const CbowModel& model, Space space,
                                        std::span<const float> query, int32_t k,
                                        const std::unordered_set<std::string>* exclude = nullptr);

} // namespace wsd

#endif
