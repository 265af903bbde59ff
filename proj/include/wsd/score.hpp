#ifndef WSD_SCORE_HPP
#define WSD_SCORE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsd/cluster.hpp"
#include "wsd/context.hpp"

namespace wsd {

struct GridSpec {
    std::vector<double> epsilons;     // strictly increasing, in (0, 1)
    std::vector<int32_t> min_samples; // strictly increasing, positive
    double noise_low = 0.01;          // admissible noise ratio band, inclusive
    double noise_high = 0.30;

    static GridSpec defaults(); // eps 0.01..0.99 step 0.01; m {5,10,20,...,110}
    void validate() const;      // throws ConfigError
};

struct GridResultRow {
    double epsilon = 0.0;
    int32_t min_samples = 0;
    int32_t n_clusters = 0;
    double mean_silhouette = 0.0;
    double noise_ratio = 0.0;
    double parameter_score = 0.0;

    bool operator==(const GridResultRow&) const = default;
};

struct GridRunOptions {
    int32_t threads = 0; // 0 = hardware concurrency
    std::size_t cache_budget_bytes = PairwiseDistances::kDefaultCacheBudget;
};

// One DBSCAN + silhouette evaluation per (m, epsilon) pair, rows ordered by
// (min_samples, epsilon). Rows across the grid are independent and run in
// parallel; scores are left at 0 for fill_scores.
std::vector<GridResultRow> run_grid(const ContextVectorSet& contexts, const GridSpec& spec,
                                    const SilhouetteConfig& silhouette = {},
                                    const GridRunOptions& options = {});

// Normalizers shared by a whole grid.
struct GridNormalizers {
    int32_t max_clusters = 0;
    // Largest epsilon whose row produced at least two clusters; empty when no
    // row did, in which case every score is zero.
    std::optional<double> max_eps_multicluster;

    static GridNormalizers from_rows(const std::vector<GridResultRow>& rows);
};

// Normalized parameter score. Zero when the noise ratio leaves
// [noise_low, noise_high] or the row has fewer than two clusters; otherwise
//   2 * (n/max_n) * 0.5 * (s + 1) / (1 + (eps/max_eps) * (noise/noise_high))
// which lies in [0, 2].
double parameter_score(const GridResultRow& row, const GridNormalizers& norm,
                       const GridSpec& spec);

void fill_scores(std::vector<GridResultRow>& rows, const GridSpec& spec);

// Highest score wins; ties prefer smaller epsilon, then smaller min_samples.
// Empty result means no admissible clustering exists (every score is zero).
std::optional<GridResultRow> select_best(const std::vector<GridResultRow>& rows);

// Long-format CSV:
// epsilon,min_samples,n_clusters,mean_silhouette,noise_ratio,parameter_score
void export_grid_csv(const std::vector<GridResultRow>& rows, const std::string& path);
std::vector<GridResultRow> import_grid_csv(const std::string& path);

// Matrix CSVs with min_samples rows and epsilon columns: cluster counts and
// parameter scores scaled by 100.
void export_heatmaps(const std::vector<GridResultRow>& rows, const GridSpec& spec,
                     const std::string& clusters_path, const std::string& scores_path);

// JSON verdict for one target: best parameters (if any) plus the ambiguity
// flag (at least two clusters at the selected parameters).
struct BestReport {
    bool admissible = false;
    bool ambiguous = false;
    std::optional<GridResultRow> best;
    int64_t rows_gated_low_noise = 0;  // zeroed for noise below noise_low
    int64_t rows_gated_high_noise = 0; // zeroed for noise above noise_high
};

BestReport make_best_report(const std::vector<GridResultRow>& rows, const GridSpec& spec);
void export_best_json(const BestReport& report, const std::string& target,
                      const std::string& path);

} // namespace wsd

#endif
