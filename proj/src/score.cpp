#include "wsd/score.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include <json.hpp>

#include "wsd/errors.hpp"
#include "io_util.hpp"

namespace wsd {

GridSpec GridSpec::defaults() {
    GridSpec spec;
    spec.epsilons.reserve(99);
    for (int i = 1; i <= 99; ++i) spec.epsilons.push_back(static_cast<double>(i) / 100.0);
    spec.min_samples = {5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110};
    return spec;
}

void GridSpec::validate() const {
    if (epsilons.empty()) throw ConfigError("epsilon grid is empty");
    if (min_samples.empty()) throw ConfigError("min_samples grid is empty");
    double prev_eps = 0.0;
    for (double e : epsilons) {
        if (!(e > prev_eps)) throw ConfigError("epsilons must be strictly increasing");
        if (!(e > 0.0) || !(e < 1.0)) throw ConfigError("epsilons must lie in (0, 1)");
        prev_eps = e;
    }
    int32_t prev_m = 0;
    for (int32_t m : min_samples) {
        if (m <= prev_m) throw ConfigError("min_samples must be strictly increasing");
        prev_m = m;
    }
    if (min_samples.front() < 1) throw ConfigError("min_samples must be positive");
    if (!(noise_low >= 0.0) || !(noise_high > noise_low) || !(noise_high <= 1.0))
        throw ConfigError("noise band must satisfy 0 <= low < high <= 1");
}

std::vector<GridResultRow> run_grid(const ContextVectorSet& contexts, const GridSpec& spec,
                                    const SilhouetteConfig& silhouette,
                                    const GridRunOptions& options) {
    spec.validate();
    if (contexts.size() == 0)
        throw DomainError("no context vectors to cluster");

    PairwiseDistances dist(contexts.vectors, options.cache_budget_bytes);

    std::vector<GridResultRow> rows(spec.min_samples.size() * spec.epsilons.size());
    for (std::size_t mi = 0; mi < spec.min_samples.size(); ++mi)
        for (std::size_t ei = 0; ei < spec.epsilons.size(); ++ei) {
            auto& row = rows[mi * spec.epsilons.size() + ei];
            row.min_samples = spec.min_samples[mi];
            row.epsilon = spec.epsilons[ei];
        }

    auto evaluate = [&](GridResultRow& row) {
        Clustering c = dbscan(dist, {row.epsilon, row.min_samples});
        row.n_clusters = c.n_clusters;
        row.noise_ratio = c.noise_ratio;
        row.mean_silhouette = mean_silhouette(dist, c.labels, silhouette);
        row.parameter_score = 0.0;
    };

    int32_t threads = options.threads;
    if (threads <= 0) threads = static_cast<int32_t>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min<int32_t>(threads, static_cast<int32_t>(rows.size()));

    if (threads == 1) {
        for (auto& row : rows) evaluate(row);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1))
                evaluate(rows[i]);
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int32_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return rows;
}

GridNormalizers GridNormalizers::from_rows(const std::vector<GridResultRow>& rows) {
    GridNormalizers norm;
    for (const auto& row : rows) {
        norm.max_clusters = std::max(norm.max_clusters, row.n_clusters);
        if (row.n_clusters >= 2)
            norm.max_eps_multicluster =
                std::max(norm.max_eps_multicluster.value_or(0.0), row.epsilon);
    }
    return norm;
}

double parameter_score(const GridResultRow& row, const GridNormalizers& norm,
                       const GridSpec& spec) {
    if (row.n_clusters <= 1) return 0.0;
    if (row.noise_ratio < spec.noise_low || row.noise_ratio > spec.noise_high) return 0.0;
    if (norm.max_clusters < 2 || !norm.max_eps_multicluster) return 0.0;

    const double cluster_term =
        static_cast<double>(row.n_clusters) / static_cast<double>(norm.max_clusters);
    const double silhouette_term = 0.5 * (row.mean_silhouette + 1.0);
    const double eps_term = row.epsilon / *norm.max_eps_multicluster;
    const double noise_term = row.noise_ratio / spec.noise_high;
    return 2.0 * (cluster_term * silhouette_term) / (1.0 + eps_term * noise_term);
}

void fill_scores(std::vector<GridResultRow>& rows, const GridSpec& spec) {
    const GridNormalizers norm = GridNormalizers::from_rows(rows);
    for (auto& row : rows) row.parameter_score = parameter_score(row, norm, spec);
}

std::optional<GridResultRow> select_best(const std::vector<GridResultRow>& rows) {
    const GridResultRow* best = nullptr;
    for (const auto& row : rows) {
        if (row.parameter_score <= 0.0) continue;
        if (!best || row.parameter_score > best->parameter_score ||
            (row.parameter_score == best->parameter_score &&
             (row.epsilon < best->epsilon ||
              (row.epsilon == best->epsilon && row.min_samples < best->min_samples))))
            best = &row;
    }
    if (!best) return std::nullopt;
    return *best;
}

void export_grid_csv(const std::vector<GridResultRow>& rows, const std::string& path) {
    auto f = io::open_out(path);
    f << "epsilon,min_samples,n_clusters,mean_silhouette,noise_ratio,parameter_score\n";
    for (const auto& r : rows) {
        f << io::format_double(r.epsilon) << ',' << r.min_samples << ',' << r.n_clusters
          << ',' << io::format_double(r.mean_silhouette) << ','
          << io::format_double(r.noise_ratio) << ','
          << io::format_double(r.parameter_score) << '\n';
    }
    if (!f) throw IoError("write failed: " + path);
}

std::vector<GridResultRow> import_grid_csv(const std::string& path) {
    auto f = io::open_in(path);
    std::string line;
    if (!std::getline(f, line) ||
        line != "epsilon,min_samples,n_clusters,mean_silhouette,noise_ratio,parameter_score")
        throw FormatError("unexpected grid CSV header in " + path);
    std::vector<GridResultRow> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<std::string_view> fields;
        std::string_view rest = line;
        while (true) {
            auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != 6) throw FormatError("bad grid CSV row in " + path);
        GridResultRow r;
        r.epsilon = io::parse_double(fields[0], path);
        r.min_samples = static_cast<int32_t>(io::parse_int(fields[1], path));
        r.n_clusters = static_cast<int32_t>(io::parse_int(fields[2], path));
        r.mean_silhouette = io::parse_double(fields[3], path);
        r.noise_ratio = io::parse_double(fields[4], path);
        r.parameter_score = io::parse_double(fields[5], path);
        rows.push_back(r);
    }
    return rows;
}

void export_heatmaps(const std::vector<GridResultRow>& rows, const GridSpec& spec,
                     const std::string& clusters_path, const std::string& scores_path) {
    const std::size_t ne = spec.epsilons.size();
    const std::size_t nm = spec.min_samples.size();
    if (rows.size() != ne * nm)
        throw DomainError("row count does not match the grid specification");

    auto write = [&](const std::string& path, auto cell) {
        auto f = io::open_out(path);
        f << "min_samples";
        for (double e : spec.epsilons) f << ',' << io::format_double(e);
        f << '\n';
        for (std::size_t mi = 0; mi < nm; ++mi) {
            f << spec.min_samples[mi];
            for (std::size_t ei = 0; ei < ne; ++ei) f << ',' << cell(rows[mi * ne + ei]);
            f << '\n';
        }
        if (!f) throw IoError("write failed: " + path);
    };

    write(clusters_path,
          [](const GridResultRow& r) { return std::to_string(r.n_clusters); });
    write(scores_path, [](const GridResultRow& r) {
        return io::format_double(r.parameter_score * 100.0);
    });
}

BestReport make_best_report(const std::vector<GridResultRow>& rows, const GridSpec& spec) {
    BestReport report;
    report.best = select_best(rows);
    report.admissible = report.best.has_value();
    report.ambiguous = report.best && report.best->n_clusters >= 2;
    for (const auto& row : rows) {
        if (row.n_clusters <= 1) continue; // gated regardless of noise
        if (row.noise_ratio < spec.noise_low) ++report.rows_gated_low_noise;
        else if (row.noise_ratio > spec.noise_high) ++report.rows_gated_high_noise;
    }
    return report;
}

void export_best_json(const BestReport& report, const std::string& target,
                      const std::string& path) {
    nlohmann::json j = {
        {"schema_version", 1},
        {"target", target},
        {"admissible", report.admissible},
        {"ambiguous", report.ambiguous},
        {"rows_gated_low_noise", report.rows_gated_low_noise},
        {"rows_gated_high_noise", report.rows_gated_high_noise},
    };
    if (report.best) {
        j["params"] = {{"epsilon", report.best->epsilon},
                       {"min_samples", report.best->min_samples}};
        j["stats"] = {{"n_clusters", report.best->n_clusters},
                      {"mean_silhouette", report.best->mean_silhouette},
                      {"noise_ratio", report.best->noise_ratio},
                      {"parameter_score", report.best->parameter_score}};
    } else {
        j["reason"] = "no admissible clustering";
    }
    auto f = io::open_out(path);
    f << j.dump(2) << '\n';
    if (!f) throw IoError("write failed: " + path);
}

} // namespace wsd
