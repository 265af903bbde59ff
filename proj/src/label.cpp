#include "wsd/label.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>

#include <json.hpp>

#include "wsd/errors.hpp"
#include "io_util.hpp"

namespace wsd {

std::vector<float> cluster_centroid(const ContextVectorSet& contexts,
                                    const Clustering& clustering, int32_t cluster_id) {
    if (clustering.labels.size() != static_cast<std::size_t>(contexts.size()))
        throw DomainError("clustering does not match the context-vector set");
    if (cluster_id < 0 || cluster_id >= clustering.n_clusters)
        throw DomainError("unknown cluster id " + std::to_string(cluster_id));

    const std::size_t dim = contexts.vectors.cols();
    std::vector<double> sum(dim, 0.0);
    int64_t members = 0;
    for (std::size_t i = 0; i < clustering.labels.size(); ++i) {
        if (clustering.labels[i] != cluster_id) continue;
        auto row = contexts.vectors.row(i);
        for (std::size_t d = 0; d < dim; ++d) sum[d] += row[d];
        ++members;
    }
    if (members == 0) throw DomainError("cluster " + std::to_string(cluster_id) + " is empty");

    std::vector<float> centroid(dim);
    for (std::size_t d = 0; d < dim; ++d)
        centroid[d] = static_cast<float>(sum[d] / static_cast<double>(members));
    return centroid;
}

std::vector<Neighbor> label_in2in(const CbowModel& model, std::span<const float> centroid,
                                  int32_t k, const std::unordered_set<std::string>* exclude) {
    return nearest_neighbors(model, Space::In, centroid, k, exclude);
}

std::vector<Neighbor> label_in2out(const CbowModel& model, std::span<const float> centroid,
                                   int32_t k, const std::unordered_set<std::string>* exclude) {
    return nearest_neighbors(model, Space::Out, centroid, k, exclude);
}

ClusterLabelReport build_report(const ContextVectorSet& contexts, const Clustering& clustering,
                                const CbowModel& model, int32_t k, bool exclude_target) {
    if (k < 1) throw ConfigError("k must be >= 1");
    ClusterLabelReport report;
    report.target = contexts.target;
    report.k = k;
    report.epsilon = clustering.params.epsilon;
    report.min_samples = clustering.params.min_samples;

    std::unordered_set<std::string> exclude;
    if (exclude_target) exclude.insert(contexts.target);
    const auto* exclude_ptr = exclude_target ? &exclude : nullptr;

    std::vector<int64_t> counts(static_cast<std::size_t>(clustering.n_clusters), 0);
    for (int32_t l : clustering.labels) {
        if (l == -1) ++report.noise_count;
        else ++counts[static_cast<std::size_t>(l)];
    }

    for (int32_t c = 0; c < clustering.n_clusters; ++c) {
        ClusterRecord record;
        record.cluster_id = c;
        record.member_count = counts[static_cast<std::size_t>(c)];
        auto centroid = cluster_centroid(contexts, clustering, c);
        record.in2in = label_in2in(model, centroid, k, exclude_ptr);
        record.in2out = label_in2out(model, centroid, k, exclude_ptr);
        report.clusters.push_back(std::move(record));
    }
    std::stable_sort(report.clusters.begin(), report.clusters.end(),
                     [](const ClusterRecord& a, const ClusterRecord& b) {
                         if (a.member_count != b.member_count)
                             return a.member_count > b.member_count;
                         return a.cluster_id < b.cluster_id;
                     });
    return report;
}

namespace {

nlohmann::json neighbors_to_json(const std::vector<Neighbor>& neighbors) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& n : neighbors)
        arr.push_back({{"word", n.word}, {"similarity", n.similarity}});
    return arr;
}

std::vector<Neighbor> neighbors_from_json(const nlohmann::json& arr) {
    std::vector<Neighbor> neighbors;
    for (const auto& item : arr) {
        Neighbor n;
        n.word = item.at("word").get<std::string>();
        n.similarity = item.at("similarity").get<double>();
        neighbors.push_back(std::move(n));
    }
    return neighbors;
}

} // namespace

void write_report_json(const ClusterLabelReport& report, const std::string& path) {
    nlohmann::json j = {
        {"schema_version", 1},
        {"target", report.target},
        {"k", report.k},
        {"params", {{"epsilon", report.epsilon}, {"min_samples", report.min_samples}}},
        {"noise", {{"member_count", report.noise_count}}},
    };
    nlohmann::json clusters = nlohmann::json::array();
    for (const auto& c : report.clusters) {
        clusters.push_back({{"cluster_id", c.cluster_id},
                            {"member_count", c.member_count},
                            {"in2in", neighbors_to_json(c.in2in)},
                            {"in2out", neighbors_to_json(c.in2out)}});
    }
    j["clusters"] = std::move(clusters);
    auto f = io::open_out(path);
    f << j.dump(2) << '\n';
    if (!f) throw IoError("write failed: " + path);
}

ClusterLabelReport read_report_json(const std::string& path) {
    auto f = io::open_in(path);
    nlohmann::json j = nlohmann::json::parse(f, nullptr, false);
    if (j.is_discarded()) throw FormatError("not a JSON report: " + path);
    try {
        ClusterLabelReport report;
        report.target = j.at("target").get<std::string>();
        report.k = j.at("k").get<int32_t>();
        report.epsilon = j.at("params").at("epsilon").get<double>();
        report.min_samples = j.at("params").at("min_samples").get<int32_t>();
        report.noise_count = j.at("noise").at("member_count").get<int64_t>();
        for (const auto& c : j.at("clusters")) {
            ClusterRecord record;
            record.cluster_id = c.at("cluster_id").get<int32_t>();
            record.member_count = c.at("member_count").get<int64_t>();
            record.in2in = neighbors_from_json(c.at("in2in"));
            record.in2out = neighbors_from_json(c.at("in2out"));
            report.clusters.push_back(std::move(record));
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("malformed label report " + path + ": " + e.what());
    }
}

void write_report_table(const ClusterLabelReport& report, const std::string& path,
                        int32_t rows) {
    if (rows < 1) throw ConfigError("table rows must be >= 1");
    auto f = io::open_out(path);
    f << "target: " << report.target << "  (epsilon=" << io::format_double(report.epsilon)
      << ", min_samples=" << report.min_samples << ")\n";
    f << "noise: " << report.noise_count << "\n\n";

    constexpr int kCol = 18;
    auto pad = [&](const std::string& s) {
        std::string out = s.size() > static_cast<std::size_t>(kCol - 2)
                              ? s.substr(0, static_cast<std::size_t>(kCol - 2))
                              : s;
        out.resize(static_cast<std::size_t>(kCol), ' ');
        return out;
    };

    f << pad("rank");
    for (const auto& c : report.clusters) {
        f << pad("cluster " + std::to_string(c.cluster_id) + " In2In");
        f << pad("(n=" + std::to_string(c.member_count) + ") In2Out");
    }
    f << '\n';
    for (int32_t r = 0; r < rows; ++r) {
        f << pad(std::to_string(r + 1));
        for (const auto& c : report.clusters) {
            const auto item = [&](const std::vector<Neighbor>& list) {
                return static_cast<std::size_t>(r) < list.size()
                           ? list[static_cast<std::size_t>(r)].word
                           : std::string("-");
            };
            f << pad(item(c.in2in)) << pad(item(c.in2out));
        }
        f << '\n';
    }
    if (!f) throw IoError("write failed: " + path);
}

} // namespace wsd
