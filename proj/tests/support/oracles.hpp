// Independent reference implementations used to cross-check the library.
// Everything here is written from the definitions, not from the production
// code, and deliberately takes the slow, obvious route.

#ifndef WSD_TEST_ORACLES_HPP
#define WSD_TEST_ORACLES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wsd/cluster.hpp"
#include "wsd/corpus.hpp"
#include "wsd/embedding.hpp"
#include "wsd/matrix.hpp"

namespace oracle {

// Textbook DBSCAN: full distance matrix, core test by neighborhood counting
// (self included), clusters as connected components of the core graph,
// borders attached to the earliest-numbered reachable cluster. Clusters are
// numbered by their smallest core point index, which reproduces the
// deterministic labeling contract exactly.
std::vector<int32_t> dbscan_labels(const wsd::Matrix& points, double epsilon,
                                   int32_t min_samples);

// Direct double-loop mean silhouette over float-quantized cosine distances.
// labels uses -1 for noise; noise_as_cluster mirrors NoisePolicy.
double silhouette(const wsd::Matrix& points, std::span<const int32_t> labels,
                  bool noise_as_cluster);

// Naive window sum for one occurrence of the target.
std::vector<float> context_row(const std::vector<std::vector<int32_t>>& docs,
                               const wsd::Matrix& in, int32_t doc, int32_t pos,
                               int32_t window);

// Frequency recount with a plain hash map.
std::unordered_map<std::string, int64_t> recount(
    const std::vector<wsd::TokenSequence>& docs);

// Full-sort nearest neighbor scan over one embedding space.
std::vector<std::pair<std::string, double>> brute_neighbors(const wsd::CbowModel& model,
                                                            bool in_space,
                                                            std::span<const float> query,
                                                            int32_t k);

// Deterministic corpus/points helpers shared by tests and acceptance.
wsd::Matrix random_points(std::size_t n, std::size_t d, uint64_t seed);

} // namespace oracle

#endif
