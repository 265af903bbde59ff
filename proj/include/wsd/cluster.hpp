#ifndef WSD_CLUSTER_HPP
#define WSD_CLUSTER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsd/context.hpp"
#include "wsd/matrix.hpp"

namespace wsd {

// 1 - cos(u, v), computed in double and clamped to [0, 2].
// Throws DomainError if either vector has zero norm.
double cosine_distance(std::span<const float> u, std::span<const float> v);

// Pairwise cosine distances over the rows of a point matrix, quantized to
// float32 so the cached and on-the-fly paths agree bit for bit. The full
// N x N matrix is materialized when it fits the byte budget; otherwise
// distances are recomputed per lookup.
class PairwiseDistances {
public:
    static constexpr std::size_t kDefaultCacheBudget = std::size_t{1} << 30;

    explicit PairwiseDistances(const Matrix& points,
                               std::size_t cache_budget_bytes = kDefaultCacheBudget);

    std::size_t size() const { return n_; }
    bool cached() const { return !cache_.empty(); }

    float operator()(std::size_t i, std::size_t j) const {
        if (i == j) return 0.0f;
        if (!cache_.empty()) return cache_[i * n_ + j];
        return compute(i, j);
    }

private:
    float compute(std::size_t i, std::size_t j) const;

    const Matrix* points_ = nullptr;
    std::size_t n_ = 0;
    std::vector<double> norms_;
    std::vector<float> cache_;
};

struct DbscanParams {
    double epsilon = 0.0;   // cosine distance radius, in (0, 2)
    int32_t min_samples = 0;

    void validate() const; // throws ConfigError
};

struct Clustering {
    std::vector<int32_t> labels; // 0..K-1, or -1 for noise
    DbscanParams params;
    int32_t n_clusters = 0;
    double noise_ratio = 0.0;
    std::optional<double> mean_silhouette;
};

// Density-based clustering with exact O(N^2) neighborhoods. A point is core
// when its epsilon-neighborhood, including the point itself, holds at least
// min_samples points. Points are visited in ascending index order, so border
// points land in the first cluster that reaches them and the labeling is
// deterministic.
Clustering dbscan(const PairwiseDistances& dist, const DbscanParams& params);
Clustering dbscan(const Matrix& points, const DbscanParams& params);

enum class NoisePolicy {
    AsCluster, // label -1 participates as an ordinary cluster
    Exclude,   // noise points are dropped from the evaluation
};

struct SilhouetteConfig {
    NoisePolicy noise_policy = NoisePolicy::AsCluster;
    int64_t sample_size = 0; // 0 = all points
    uint64_t seed = 0;       // subsample seed
};

// Mean per-sample silhouette under cosine distance. Singleton clusters score
// 0; fewer than two distinct considered labels yields -1.
double mean_silhouette(const PairwiseDistances& dist, std::span<const int32_t> labels,
                       const SilhouetteConfig& config = {});
double mean_silhouette(const Matrix& points, std::span<const int32_t> labels,
                       const SilhouetteConfig& config = {});

// occurrence_index, document_index, token_offset, label
void export_clustering_csv(const ContextVectorSet& set, const Clustering& clustering,
                           const std::string& path);

} // namespace wsd

#endif
