#ifndef WSD_LABEL_HPP
#define WSD_LABEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wsd/cluster.hpp"
#include "wsd/context.hpp"
#include "wsd/embedding.hpp"

namespace wsd {

// Element-wise mean of the member context vectors, accumulated in double.
// Throws DomainError for an unknown or empty cluster id (noise included;
// label -1 does not name a cluster).
std::vector<float> cluster_centroid(const ContextVectorSet& contexts,
                                    const Clustering& clustering, int32_t cluster_id);

// Top-k words nearest to the centroid, measured in the IN space (words used
// in similar contexts) or the OUT space (words predicted by such contexts).
std::vector<Neighbor> label_in2in(const CbowModel& model, std::span<const float> centroid,
                                  int32_t k,
                                  const std::unordered_set<std::string>* exclude = nullptr);
std::vector<Neighbor> label_in2out(const CbowModel& model, std::span<const float> centroid,
                                   int32_t k,
                                   const std::unordered_set<std::string>* exclude = nullptr);

struct ClusterRecord {
    int32_t cluster_id = 0;
    int64_t member_count = 0;
    std::vector<Neighbor> in2in;
    std::vector<Neighbor> in2out;
};

struct ClusterLabelReport {
    std::string target;
    int32_t k = 0;
    double epsilon = 0.0;
    int32_t min_samples = 0;
    std::vector<ClusterRecord> clusters; // descending member_count
    int64_t noise_count = 0;
};

// The target word itself stays in the candidate pool unless exclude_target
// is set.
ClusterLabelReport build_report(const ContextVectorSet& contexts, const Clustering& clustering,
                                const CbowModel& model, int32_t k, bool exclude_target = false);

void write_report_json(const ClusterLabelReport& report, const std::string& path);
ClusterLabelReport read_report_json(const std::string& path);

// Fixed-width table with one column pair (In2In / In2Out) per cluster,
// top `rows` entries each.
void write_report_table(const ClusterLabelReport& report, const std::string& path,
                        int32_t rows = 3);

} // namespace wsd

#endif
