#include "wsd/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "wsd/errors.hpp"
#include "io_util.hpp"

namespace wsd {

namespace {

constexpr char kModelMagic[4] = {'W', 'S', 'D', 'M'};
constexpr uint32_t kModelVersion = 1;

// The classic word2vec linear congruential generator. Bit-stable across
// platforms, which is what makes deterministic mode byte-reproducible.
struct Lcg {
    uint64_t state;

    explicit Lcg(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state = state * 25214903917ULL + 11ULL;
        return state;
    }

    // 16-bit fraction in [0, 1)
    double unit() {
        next();
        return static_cast<double>(state & 0xFFFFULL) / 65536.0;
    }

    uint64_t table_index(uint64_t modulus) { return (next() >> 16) % modulus; }
};

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(1 + e^x) without overflow for large x
double softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

// Cumulative unigram^0.75 sampling table, word2vec style.
std::vector<int32_t> build_unigram_table(const Vocabulary& vocab, int64_t table_size) {
    const int32_t v = vocab.size();
    double total_pow = 0.0;
    for (int32_t id = 0; id < v; ++id)
        total_pow += std::pow(static_cast<double>(vocab.count(id)), 0.75);

    std::vector<int32_t> table(static_cast<std::size_t>(table_size));
    int32_t id = 0;
    double cumulative = std::pow(static_cast<double>(vocab.count(0)), 0.75) / total_pow;
    for (int64_t a = 0; a < table_size; ++a) {
        table[static_cast<std::size_t>(a)] = id;
        if (static_cast<double>(a) / static_cast<double>(table_size) > cumulative) {
            ++id;
            if (id >= v) id = v - 1;
            cumulative += std::pow(static_cast<double>(vocab.count(id)), 0.75) / total_pow;
        }
    }
    return table;
}

void validate_corpus_ids(const EncodedCorpus& corpus, int32_t vocab_size) {
    for (const auto& doc : corpus.docs)
        for (int32_t id : doc)
            if (id < 0 || id >= vocab_size)
                throw DomainError("corpus references word id " + std::to_string(id) +
                                  " outside the vocabulary");
}

struct EpochLoss {
    double sum = 0.0;
    int64_t steps = 0;
};

// Shared state for the worker threads. Matrix rows are updated without
// locks; colliding writes are tolerated, as is standard for this family of
// trainers. workers == 1 avoids the races entirely.
struct TrainShared {
    const EncodedCorpus* corpus;
    const Vocabulary* vocab;
    const TrainingConfig* config;
    const std::vector<int32_t>* unigram;
    float* in;
    float* out;
    int32_t dim;
    int64_t planned_words; // epochs * total_tokens
    std::atomic<int64_t> words_seen{0};
};

// Classic frequent-word downsampling: the keep probability shrinks as the
// word's corpus share exceeds the threshold.
bool subsample_drop(double count, double threshold_tokens, Lcg& rng) {
    const double keep =
        (std::sqrt(count / threshold_tokens) + 1.0) * threshold_tokens / count;
    return keep < rng.unit();
}

void train_worker(TrainShared& shared, int32_t worker, std::vector<EpochLoss>& losses) {
    const TrainingConfig& cfg = *shared.config;
    const EncodedCorpus& corpus = *shared.corpus;
    const int32_t dim = shared.dim;
    const int64_t table_size = static_cast<int64_t>(shared.unigram->size());
    const double total_tokens = static_cast<double>(corpus.total_tokens);

    Lcg rng(cfg.seed + static_cast<uint64_t>(worker) * 0x9E3779B97F4A7C15ULL);
    std::vector<float> mean(static_cast<std::size_t>(dim));
    std::vector<float> mean_err(static_cast<std::size_t>(dim));
    std::vector<int32_t> context;
    float alpha = cfg.learning_rate;

    for (int32_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        EpochLoss& epoch_loss = losses[static_cast<std::size_t>(epoch)];
        for (std::size_t di = worker; di < corpus.docs.size();
             di += static_cast<std::size_t>(cfg.workers)) {
            const auto& doc = corpus.docs[di];
            if (doc.empty()) continue;

            double progress = static_cast<double>(shared.words_seen.load(std::memory_order_relaxed)) /
                              static_cast<double>(shared.planned_words + 1);
            alpha = cfg.learning_rate -
                    (cfg.learning_rate - cfg.learning_rate_min) * static_cast<float>(progress);
            if (alpha < cfg.learning_rate_min) alpha = cfg.learning_rate_min;

            const int64_t len = static_cast<int64_t>(doc.size());
            for (int64_t pos = 0; pos < len; ++pos) {
                const int32_t center = doc[static_cast<std::size_t>(pos)];

                if (cfg.subsample > 0.0 &&
                    subsample_drop(static_cast<double>(shared.vocab->count(center)),
                                   cfg.subsample * total_tokens, rng))
                    continue;

                int64_t span = cfg.window;
                if (cfg.dynamic_window)
                    span = cfg.window - static_cast<int64_t>(rng.next() % static_cast<uint64_t>(cfg.window));

                context.clear();
                for (int64_t p = pos - span; p <= pos + span; ++p) {
                    if (p == pos || p < 0 || p >= len) continue;
                    context.push_back(doc[static_cast<std::size_t>(p)]);
                }
                if (context.empty()) continue;

                const float inv_count = 1.0f / static_cast<float>(context.size());
                std::fill(mean.begin(), mean.end(), 0.0f);
                for (int32_t c : context) {
                    const float* row = shared.in + static_cast<std::size_t>(c) * dim;
                    for (int32_t d = 0; d < dim; ++d) mean[static_cast<std::size_t>(d)] += row[d];
                }
                for (int32_t d = 0; d < dim; ++d) mean[static_cast<std::size_t>(d)] *= inv_count;

                std::fill(mean_err.begin(), mean_err.end(), 0.0f);
                double step_loss = 0.0;
                for (int32_t s = 0; s <= cfg.negative_samples; ++s) {
                    int32_t target;
                    double label;
                    if (s == 0) {
                        target = center;
                        label = 1.0;
                    } else {
                        target = (*shared.unigram)[static_cast<std::size_t>(
                            rng.table_index(static_cast<uint64_t>(table_size)))];
                        if (target == center) continue;
                        label = 0.0;
                    }
                    float* row = shared.out + static_cast<std::size_t>(target) * dim;
                    double f = 0.0;
                    for (int32_t d = 0; d < dim; ++d)
                        f += static_cast<double>(mean[static_cast<std::size_t>(d)]) * row[d];
                    step_loss += label > 0.5 ? softplus(-f) : softplus(f);
                    const float g = static_cast<float>(label - sigmoid(f)) * alpha;
                    for (int32_t d = 0; d < dim; ++d) {
                        mean_err[static_cast<std::size_t>(d)] += g * row[d];
                        row[d] += g * mean[static_cast<std::size_t>(d)];
                    }
                }
                epoch_loss.sum += step_loss;
                epoch_loss.steps += 1;

                const float scale = inv_count;
                for (int32_t c : context) {
                    float* row = shared.in + static_cast<std::size_t>(c) * dim;
                    for (int32_t d = 0; d < dim; ++d)
                        row[d] += mean_err[static_cast<std::size_t>(d)] * scale;
                }
            }
            shared.words_seen.fetch_add(len, std::memory_order_relaxed);
        }
    }
}

} // namespace

void TrainingConfig::validate() const {
    if (dimension < 1) throw ConfigError("dimension must be >= 1");
    if (window < 1) throw ConfigError("window must be >= 1");
    if (min_count < 1) throw ConfigError("min_count must be >= 1");
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    if (negative_samples < 1) throw ConfigError("negative_samples must be >= 1");
    if (!(learning_rate > 0.0f)) throw ConfigError("learning_rate must be positive");
    if (!(learning_rate_min > 0.0f) || learning_rate_min > learning_rate)
        throw ConfigError("learning_rate_min must be in (0, learning_rate]");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (subsample < 0.0) throw ConfigError("subsample must be >= 0");
    if (unigram_table_size < 1) throw ConfigError("unigram_table_size must be >= 1");
}

CbowModel::CbowModel(Vocabulary vocab, int32_t dimension)
    : vocab_(std::move(vocab)),
      dim_(dimension),
      in_(static_cast<std::size_t>(vocab_.size()), static_cast<std::size_t>(dimension)),
      out_(static_cast<std::size_t>(vocab_.size()), static_cast<std::size_t>(dimension)) {
    if (dimension < 1) throw ConfigError("dimension must be >= 1");
}

CbowModel CbowModel::initialize(Vocabulary vocab, int32_t dimension, uint64_t seed) {
    CbowModel model(std::move(vocab), dimension);
    Lcg rng(seed);
    const float inv_dim = 1.0f / static_cast<float>(dimension);
    auto fill = [&](Matrix& m) {
        float* data = m.data();
        const std::size_t n = m.size();
        for (std::size_t i = 0; i < n; ++i)
            data[i] = (static_cast<float>(rng.unit()) - 0.5f) * inv_dim;
    };
    fill(model.in_);
    fill(model.out_);
    return model;
}

double cbow_step_loss(const std::vector<std::vector<double>>& context_rows,
                      const std::vector<double>& center_row,
                      const std::vector<std::vector<double>>& negative_rows) {
    if (context_rows.empty()) throw DomainError("cbow step requires a non-empty context");
    const std::size_t dim = center_row.size();
    std::vector<double> h(dim, 0.0);
    for (const auto& row : context_rows)
        for (std::size_t d = 0; d < dim; ++d) h[d] += row[d];
    const double inv = 1.0 / static_cast<double>(context_rows.size());
    for (std::size_t d = 0; d < dim; ++d) h[d] *= inv;

    auto dot = [&](const std::vector<double>& row) {
        double f = 0.0;
        for (std::size_t d = 0; d < dim; ++d) f += h[d] * row[d];
        return f;
    };

    double loss = softplus(-dot(center_row));
    for (const auto& row : negative_rows) loss += softplus(dot(row));
    return loss;
}

CbowStep cbow_step_loss_and_gradients(const CbowModel& model, int32_t center,
                                      std::span<const int32_t> context,
                                      std::span<const int32_t> negatives) {
    const int32_t v = model.vocab().size();
    const int32_t dim = model.dimension();
    auto check = [&](int32_t id, const char* what) {
        if (id < 0 || id >= v)
            throw DomainError(std::string(what) + " id out of range: " + std::to_string(id));
    };
    check(center, "center");
    for (int32_t id : context) check(id, "context");
    for (int32_t id : negatives) {
        check(id, "negative");
        if (id == center) throw DomainError("negative ids must not contain the center word");
    }
    if (context.empty()) throw DomainError("cbow step requires a non-empty context");

    auto in_row = [&](int32_t id) {
        auto r = model.in().row(static_cast<std::size_t>(id));
        return std::vector<double>(r.begin(), r.end());
    };
    auto out_row = [&](int32_t id) {
        auto r = model.out().row(static_cast<std::size_t>(id));
        return std::vector<double>(r.begin(), r.end());
    };

    const std::size_t d = static_cast<std::size_t>(dim);
    std::vector<double> h(d, 0.0);
    for (int32_t id : context) {
        auto row = in_row(id);
        for (std::size_t k = 0; k < d; ++k) h[k] += row[k];
    }
    const double inv = 1.0 / static_cast<double>(context.size());
    for (std::size_t k = 0; k < d; ++k) h[k] *= inv;

    CbowStep step;
    std::vector<double> h_grad(d, 0.0);

    // ordered accumulation per distinct out row: center first, then negatives
    std::vector<int32_t> out_ids;
    std::unordered_map<int32_t, std::size_t> out_pos;
    auto out_slot = [&](int32_t id) -> std::vector<double>& {
        auto it = out_pos.find(id);
        if (it == out_pos.end()) {
            out_pos.emplace(id, step.out_grads.size());
            out_ids.push_back(id);
            step.out_grads.emplace_back(id, std::vector<double>(d, 0.0));
            return step.out_grads.back().second;
        }
        return step.out_grads[it->second].second;
    };

    auto accumulate = [&](int32_t id, double label) {
        auto row = out_row(id);
        double f = 0.0;
        for (std::size_t k = 0; k < d; ++k) f += h[k] * row[k];
        step.loss += label > 0.5 ? softplus(-f) : softplus(f);
        const double g = sigmoid(f) - label; // dL/df
        auto& grad = out_slot(id);
        for (std::size_t k = 0; k < d; ++k) {
            grad[k] += g * h[k];
            h_grad[k] += g * row[k];
        }
    };

    accumulate(center, 1.0);
    for (int32_t id : negatives) accumulate(id, 0.0);

    // dL/d(in_c) = (occurrences of c / |context|) * dL/dh
    std::vector<int32_t> ctx_ids;
    std::unordered_map<int32_t, int32_t> ctx_counts;
    for (int32_t id : context) {
        if (ctx_counts.emplace(id, 1).second) ctx_ids.push_back(id);
        else ++ctx_counts[id];
    }
    for (int32_t id : ctx_ids) {
        const double w = static_cast<double>(ctx_counts[id]) * inv;
        std::vector<double> grad(d);
        for (std::size_t k = 0; k < d; ++k) grad[k] = w * h_grad[k];
        step.in_grads.emplace_back(id, std::move(grad));
    }
    return step;
}

TrainStats train_inplace(CbowModel& model, const EncodedCorpus& corpus,
                         const TrainingConfig& config) {
    config.validate();
    if (model.vocab().size() == 0) throw DomainError("model has an empty vocabulary");
    if (model.dimension() != config.dimension)
        throw ConfigError("model dimension does not match the training configuration");
    if (corpus.docs.empty() || corpus.total_tokens == 0)
        throw DomainError("cannot train on an empty corpus");
    validate_corpus_ids(corpus, model.vocab().size());

    const auto t0 = std::chrono::steady_clock::now();
    auto unigram = build_unigram_table(model.vocab(), config.unigram_table_size);

    TrainShared shared;
    shared.corpus = &corpus;
    shared.vocab = &model.vocab();
    shared.config = &config;
    shared.unigram = &unigram;
    shared.in = model.in().data();
    shared.out = model.out().data();
    shared.dim = config.dimension;
    shared.planned_words = static_cast<int64_t>(config.epochs) * corpus.total_tokens;

    std::vector<std::vector<EpochLoss>> losses(
        static_cast<std::size_t>(config.workers),
        std::vector<EpochLoss>(static_cast<std::size_t>(config.epochs)));

    if (config.workers == 1) {
        train_worker(shared, 0, losses[0]);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(config.workers));
        for (int32_t w = 0; w < config.workers; ++w)
            threads.emplace_back(train_worker, std::ref(shared), w,
                                 std::ref(losses[static_cast<std::size_t>(w)]));
        for (auto& t : threads) t.join();
    }

    TrainStats stats;
    stats.trained_words = shared.words_seen.load();
    stats.epoch_mean_loss.resize(static_cast<std::size_t>(config.epochs), 0.0);
    for (int32_t e = 0; e < config.epochs; ++e) {
        double sum = 0.0;
        int64_t steps = 0;
        for (const auto& per_worker : losses) {
            sum += per_worker[static_cast<std::size_t>(e)].sum;
            steps += per_worker[static_cast<std::size_t>(e)].steps;
        }
        stats.epoch_mean_loss[static_cast<std::size_t>(e)] =
            steps > 0 ? sum / static_cast<double>(steps) : 0.0;
    }
    stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    model.set_config(config);
    return stats;
}

CbowModel train_cbow(const EncodedCorpus& corpus, const Vocabulary& vocab,
                     const TrainingConfig& config, TrainStats* stats) {
    config.validate();
    CbowModel model = CbowModel::initialize(vocab, config.dimension, config.seed);
    TrainStats s = train_inplace(model, corpus, config);
    if (stats) *stats = s;
    return model;
}

double evaluate_mean_loss(const CbowModel& model, const EncodedCorpus& corpus,
                          const TrainingConfig& config, uint64_t seed) {
    config.validate();
    if (corpus.docs.empty() || corpus.total_tokens == 0)
        throw DomainError("cannot evaluate on an empty corpus");
    validate_corpus_ids(corpus, model.vocab().size());

    auto unigram = build_unigram_table(model.vocab(), config.unigram_table_size);
    const int32_t dim = model.dimension();
    const int64_t table_size = static_cast<int64_t>(unigram.size());
    Lcg rng(seed);
    std::vector<float> mean(static_cast<std::size_t>(dim));
    std::vector<int32_t> context;
    double loss_sum = 0.0;
    int64_t steps = 0;

    const double total_tokens = static_cast<double>(corpus.total_tokens);
    for (const auto& doc : corpus.docs) {
        const int64_t len = static_cast<int64_t>(doc.size());
        for (int64_t pos = 0; pos < len; ++pos) {
            const int32_t center = doc[static_cast<std::size_t>(pos)];
            if (config.subsample > 0.0 &&
                subsample_drop(static_cast<double>(model.vocab().count(center)),
                               config.subsample * total_tokens, rng))
                continue;
            int64_t span = config.window;
            if (config.dynamic_window)
                span = config.window -
                       static_cast<int64_t>(rng.next() % static_cast<uint64_t>(config.window));
            context.clear();
            for (int64_t p = pos - span; p <= pos + span; ++p) {
                if (p == pos || p < 0 || p >= len) continue;
                context.push_back(doc[static_cast<std::size_t>(p)]);
            }
            if (context.empty()) continue;

            std::fill(mean.begin(), mean.end(), 0.0f);
            for (int32_t c : context) {
                auto row = model.in().row(static_cast<std::size_t>(c));
                for (int32_t d = 0; d < dim; ++d) mean[static_cast<std::size_t>(d)] += row[d];
            }
            const float inv = 1.0f / static_cast<float>(context.size());
            for (int32_t d = 0; d < dim; ++d) mean[static_cast<std::size_t>(d)] *= inv;

            for (int32_t s = 0; s <= config.negative_samples; ++s) {
                int32_t target = center;
                if (s > 0) {
                    target = unigram[static_cast<std::size_t>(
                        rng.table_index(static_cast<uint64_t>(table_size)))];
                    if (target == center) continue;
                }
                auto row = model.out().row(static_cast<std::size_t>(target));
                double f = 0.0;
                for (int32_t d = 0; d < dim; ++d)
                    f += static_cast<double>(mean[static_cast<std::size_t>(d)]) * row[d];
                loss_sum += s == 0 ? softplus(-f) : softplus(f);
            }
            ++steps;
        }
    }
    if (steps == 0) throw DomainError("corpus yields no training steps");
    return loss_sum / static_cast<double>(steps);
}

std::vector<Neighbor> nearest_neighbors(const CbowModel& model, Space space,
                                        std::span<const float> query, int32_t k,
                                        const std::unordered_set<std::string>* exclude) {
    const Matrix& m = space == Space::In ? model.in() : model.out();
    if (query.size() != m.cols()) throw DomainError("query dimension mismatch");
    if (k < 1) throw ConfigError("k must be >= 1");

    double qnorm = 0.0;
    for (float x : query) qnorm += static_cast<double>(x) * x;
    if (qnorm == 0.0) throw DomainError("query vector has zero norm");
    qnorm = std::sqrt(qnorm);

    std::vector<Neighbor> candidates;
    candidates.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const std::string& word = model.vocab().word(static_cast<int32_t>(i));
        if (exclude && exclude->count(word)) continue;
        auto row = m.row(i);
        double dot = 0.0, norm = 0.0;
        for (std::size_t d = 0; d < row.size(); ++d) {
            dot += static_cast<double>(query[d]) * row[d];
            norm += static_cast<double>(row[d]) * row[d];
        }
        if (norm == 0.0) continue; // a zero row has no direction to rank
        candidates.push_back(
            {static_cast<int32_t>(i), word, dot / (qnorm * std::sqrt(norm))});
    }

    const auto take = std::min<std::size_t>(static_cast<std::size_t>(k), candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                      candidates.end(), [](const Neighbor& a, const Neighbor& b) {
                          if (a.similarity != b.similarity) return a.similarity > b.similarity;
                          return a.id < b.id;
                      });
    candidates.resize(take);
    return candidates;
}

void CbowModel::save(const std::string& path) const {
    auto f = io::open_out(path, true);
    f.write(kModelMagic, sizeof(kModelMagic));
    io::write_pod(f, kModelVersion);
    io::write_pod(f, static_cast<uint64_t>(vocab_.size()));
    io::write_pod(f, static_cast<uint32_t>(dim_));

    nlohmann::json echo = {
        {"dimension", config_.dimension},
        {"window", config_.window},
        {"min_count", config_.min_count},
        {"epochs", config_.epochs},
        {"negative_samples", config_.negative_samples},
        {"learning_rate", config_.learning_rate},
        {"learning_rate_min", config_.learning_rate_min},
        {"seed", config_.seed},
        {"workers", config_.workers},
        {"dynamic_window", config_.dynamic_window},
        {"subsample", config_.subsample},
        {"unigram_table_size", config_.unigram_table_size},
    };
    io::write_string(f, echo.dump());

    io::write_pod(f, static_cast<int64_t>(vocab_.min_count()));
    io::write_pod(f, static_cast<int64_t>(vocab_.total_tokens()));
    for (int32_t id = 0; id < vocab_.size(); ++id) {
        io::write_string(f, vocab_.word(id));
        io::write_pod(f, static_cast<int64_t>(vocab_.count(id)));
    }

    f.write(reinterpret_cast<const char*>(in_.data()),
            static_cast<std::streamsize>(in_.size() * sizeof(float)));
    f.write(reinterpret_cast<const char*>(out_.data()),
            static_cast<std::streamsize>(out_.size() * sizeof(float)));
    if (!f) throw IoError("write failed: " + path);
}

CbowModel CbowModel::load(const std::string& path) {
    auto f = io::open_in(path, true);
    char magic[4];
    f.read(magic, sizeof(magic));
    if (!f || std::memcmp(magic, kModelMagic, sizeof(magic)) != 0)
        throw FormatError("not a model file: " + path);
    uint32_t version = 0;
    io::read_pod(f, version, "model version");
    if (version != kModelVersion)
        throw FormatError("unsupported model version " + std::to_string(version));

    uint64_t v = 0;
    uint32_t dim = 0;
    io::read_pod(f, v, "vocabulary size");
    io::read_pod(f, dim, "dimension");
    if (v == 0 || dim == 0) throw FormatError("model declares an empty shape");

    std::string echo = io::read_string(f, "config echo");
    nlohmann::json cfg = nlohmann::json::parse(echo, nullptr, false);
    if (cfg.is_discarded()) throw FormatError("model config echo is not valid JSON");

    int64_t min_count = 1, total_tokens = 0;
    io::read_pod(f, min_count, "vocabulary min_count");
    io::read_pod(f, total_tokens, "vocabulary total_tokens");
    std::vector<std::pair<std::string, int64_t>> entries;
    entries.reserve(v);
    for (uint64_t i = 0; i < v; ++i) {
        std::string word = io::read_string(f, "vocabulary word");
        int64_t count = 0;
        io::read_pod(f, count, "vocabulary count");
        entries.emplace_back(std::move(word), count);
    }

    // The matrix payload must hold exactly 2 * V * D rows' worth of floats.
    const auto data_start = f.tellg();
    f.seekg(0, std::ios::end);
    const auto file_end = f.tellg();
    f.seekg(data_start);
    const uint64_t remaining = static_cast<uint64_t>(file_end - data_start);
    const uint64_t expected = 2ULL * v * dim * sizeof(float);
    if (remaining != expected)
        throw ShapeError("model matrix payload holds " + std::to_string(remaining) +
                         " bytes but the header declares " + std::to_string(expected));

    Vocabulary vocab = Vocabulary::from_entries(std::move(entries), min_count, total_tokens);
    CbowModel model(std::move(vocab), static_cast<int32_t>(dim));
    f.read(reinterpret_cast<char*>(model.in_.data()),
           static_cast<std::streamsize>(model.in_.size() * sizeof(float)));
    f.read(reinterpret_cast<char*>(model.out_.data()),
           static_cast<std::streamsize>(model.out_.size() * sizeof(float)));
    if (!f) throw FormatError("truncated matrix payload in " + path);

    TrainingConfig config;
    config.dimension = cfg.value("dimension", static_cast<int32_t>(dim));
    config.window = cfg.value("window", config.window);
    config.min_count = cfg.value("min_count", config.min_count);
    config.epochs = cfg.value("epochs", config.epochs);
    config.negative_samples = cfg.value("negative_samples", config.negative_samples);
    config.learning_rate = cfg.value("learning_rate", config.learning_rate);
    config.learning_rate_min = cfg.value("learning_rate_min", config.learning_rate_min);
    config.seed = cfg.value("seed", config.seed);
    config.workers = cfg.value("workers", config.workers);
    config.dynamic_window = cfg.value("dynamic_window", config.dynamic_window);
    config.subsample = cfg.value("subsample", config.subsample);
    config.unigram_table_size = cfg.value("unigram_table_size", config.unigram_table_size);
    model.set_config(config);
    return model;
}

void CbowModel::export_text(const std::string& path) const {
    auto f = io::open_out(path);
    f << vocab_.size() << ' ' << dim_ << '\n';
    for (int32_t id = 0; id < vocab_.size(); ++id) {
        f << vocab_.word(id);
        auto row = in_.row(static_cast<std::size_t>(id));
        for (float x : row) f << ' ' << io::format_float(x);
        f << '\n';
    }
    if (!f) throw IoError("write failed: " + path);
}

} // namespace wsd
