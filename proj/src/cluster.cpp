#include "wsd/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "wsd/errors.hpp"
#include "io_util.hpp"

namespace wsd {

namespace {

// splitmix64; used for subsampling so results do not depend on the platform's
// distribution implementations
struct SplitMix {
    uint64_t state;
    explicit SplitMix(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t bound) { return next() % bound; }
};

double dot_and_cosine(std::span<const float> u, std::span<const float> v, double norm_u,
                      double norm_v) {
    double dot = 0.0;
    for (std::size_t d = 0; d < u.size(); ++d)
        dot += static_cast<double>(u[d]) * static_cast<double>(v[d]);
    double dist = 1.0 - dot / (norm_u * norm_v);
    if (dist < 0.0) dist = 0.0;
    if (dist > 2.0) dist = 2.0;
    return dist;
}

double row_norm(std::span<const float> u) {
    double n = 0.0;
    for (float x : u) n += static_cast<double>(x) * static_cast<double>(x);
    return std::sqrt(n);
}

} // namespace

double cosine_distance(std::span<const float> u, std::span<const float> v) {
    if (u.size() != v.size()) throw DomainError("cosine distance needs equal dimensions");
    if (u.empty()) throw DomainError("cosine distance of empty vectors");
    const double nu = row_norm(u);
    const double nv = row_norm(v);
    if (nu == 0.0 || nv == 0.0)
        throw DomainError("cosine distance is undefined for zero vectors");
    return dot_and_cosine(u, v, nu, nv);
}

PairwiseDistances::PairwiseDistances(const Matrix& points, std::size_t cache_budget_bytes)
    : points_(&points), n_(points.rows()) {
    norms_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        norms_[i] = row_norm(points.row(i));
        if (norms_[i] == 0.0)
            throw DomainError("point " + std::to_string(i) +
                              " has zero norm; cosine distance is undefined");
    }
    if (n_ > 1 && n_ * n_ * sizeof(float) <= cache_budget_bytes) {
        cache_.assign(n_ * n_, 0.0f);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j) {
                const float d = compute(i, j);
                cache_[i * n_ + j] = d;
                cache_[j * n_ + i] = d;
            }
    }
}

float PairwiseDistances::compute(std::size_t i, std::size_t j) const {
    return static_cast<float>(
        dot_and_cosine(points_->row(i), points_->row(j), norms_[i], norms_[j]));
}

void DbscanParams::validate() const {
    if (!(epsilon > 0.0) || epsilon >= 2.0)
        throw ConfigError("epsilon must lie in (0, 2)");
    if (min_samples < 1) throw ConfigError("min_samples must be >= 1");
}

Clustering dbscan(const PairwiseDistances& dist, const DbscanParams& params) {
    params.validate();
    const std::size_t n = dist.size();
    if (n == 0) throw DomainError("dbscan needs at least one point");

    constexpr int32_t kUndefined = -2;
    constexpr int32_t kNoise = -1;
    std::vector<int32_t> labels(n, kUndefined);
    const std::size_t min_samples = static_cast<std::size_t>(params.min_samples);

    // neighborhood includes the query point itself
    auto region_query = [&](std::size_t p, std::vector<std::size_t>& out) {
        out.clear();
        for (std::size_t j = 0; j < n; ++j)
            if (dist(p, j) <= params.epsilon) out.push_back(j);
    };

    std::vector<std::size_t> neighbors;
    std::vector<std::size_t> seeds;
    int32_t cluster = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] != kUndefined) continue;
        region_query(i, neighbors);
        if (neighbors.size() < min_samples) {
            labels[i] = kNoise;
            continue;
        }
        labels[i] = cluster;
        seeds.assign(neighbors.begin(), neighbors.end());
        for (std::size_t si = 0; si < seeds.size(); ++si) {
            const std::size_t q = seeds[si];
            if (labels[q] == kNoise) labels[q] = cluster; // border point, first cluster wins
            if (labels[q] != kUndefined) continue;
            labels[q] = cluster;
            region_query(q, neighbors);
            if (neighbors.size() >= min_samples)
                seeds.insert(seeds.end(), neighbors.begin(), neighbors.end());
        }
        ++cluster;
    }

    Clustering result;
    result.labels = std::move(labels);
    result.params = params;
    result.n_clusters = cluster;
    std::size_t noise = 0;
    for (int32_t l : result.labels)
        if (l == kNoise) ++noise;
    result.noise_ratio = static_cast<double>(noise) / static_cast<double>(n);
    return result;
}

Clustering dbscan(const Matrix& points, const DbscanParams& params) {
    return dbscan(PairwiseDistances(points), params);
}

double mean_silhouette(const PairwiseDistances& dist, std::span<const int32_t> labels,
                       const SilhouetteConfig& config) {
    if (labels.size() != dist.size())
        throw DomainError("label count does not match point count");
    if (labels.empty()) throw DomainError("silhouette needs at least one point");

    std::vector<std::size_t> considered;
    considered.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (config.noise_policy == NoisePolicy::AsCluster || labels[i] != -1)
            considered.push_back(i);
    if (considered.size() < 2) return -1.0;

    if (config.sample_size > 0 &&
        static_cast<std::size_t>(config.sample_size) < considered.size()) {
        SplitMix rng(config.seed);
        const std::size_t take = static_cast<std::size_t>(config.sample_size);
        for (std::size_t i = 0; i < take; ++i) {
            const std::size_t j = i + rng.below(considered.size() - i);
            std::swap(considered[i], considered[j]);
        }
        considered.resize(take);
        std::sort(considered.begin(), considered.end());
    }

    // dense ordinals for the labels that survived
    std::unordered_map<int32_t, std::size_t> ordinal;
    std::vector<int64_t> cluster_sizes;
    for (std::size_t i : considered) {
        auto [it, inserted] = ordinal.emplace(labels[i], cluster_sizes.size());
        if (inserted) cluster_sizes.push_back(0);
        ++cluster_sizes[it->second];
    }
    if (ordinal.size() < 2) return -1.0;

    const std::size_t k = cluster_sizes.size();
    std::vector<double> sums(k);
    double total = 0.0;
    for (std::size_t i : considered) {
        const std::size_t own = ordinal[labels[i]];
        if (cluster_sizes[own] == 1) continue; // singleton scores 0
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t j : considered) {
            if (j == i) continue;
            sums[ordinal[labels[j]]] += dist(i, j);
        }
        const double a = sums[own] / static_cast<double>(cluster_sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            if (c == own) continue;
            b = std::min(b, sums[c] / static_cast<double>(cluster_sizes[c]));
        }
        const double m = std::max(a, b);
        total += m == 0.0 ? 0.0 : (b - a) / m;
    }
    return total / static_cast<double>(considered.size());
}

double mean_silhouette(const Matrix& points, std::span<const int32_t> labels,
                       const SilhouetteConfig& config) {
    return mean_silhouette(PairwiseDistances(points), labels, config);
}

void export_clustering_csv(const ContextVectorSet& set, const Clustering& clustering,
                           const std::string& path) {
    if (clustering.labels.size() != static_cast<std::size_t>(set.size()))
        throw DomainError("clustering does not match the context-vector set");
    auto f = io::open_out(path);
    f << "occurrence_index,document_index,token_offset,label\n";
    for (std::size_t i = 0; i < clustering.labels.size(); ++i) {
        const auto& occ = set.occurrences[i];
        f << i << ',' << occ.doc_index << ',' << occ.token_offset << ','
          << clustering.labels[i] << '\n';
    }
    if (!f) throw IoError("write failed: " + path);
}

} // namespace wsd
