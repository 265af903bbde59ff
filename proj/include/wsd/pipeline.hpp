#ifndef WSD_PIPELINE_HPP
#define WSD_PIPELINE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "wsd/cluster.hpp"
#include "wsd/embedding.hpp"
#include "wsd/score.hpp"
#include "wsd/synthetic.hpp"

namespace wsd {

// Flat "key = value" file; '#' starts a comment. Later assignments win.
using KeyValueConfig = std::map<std::string, std::string>;

KeyValueConfig load_key_value_file(const std::string& path);

// One line per key. Unknown keys are rejected so typos fail loudly.
struct PipelineConfig {
    std::string corpus_path;
    CorpusFormat corpus_format = CorpusFormat::PlainText;
    std::string jsonl_text_field = "text";
    std::string lemma_dict_path;

    TrainingConfig training;

    std::vector<std::string> targets;
    int32_t context_window = 0; // 0 = same as training window

    GridSpec grid;
    SilhouetteConfig silhouette;
    GridRunOptions grid_run;

    int32_t label_k = 10;
    bool label_exclude_target = false;

    std::string output_dir = "out";
    std::string model_path;       // default <output_dir>/model.bin
    bool export_text_model = false;
    bool export_context_csv = false;
    bool reuse_model = false;     // reuse an existing model file instead of retraining

    SyntheticSpec synth;
    std::string synth_corpus_path;
    std::string synth_key_path;   // default <synth_corpus_path>.key.json

    KeyValueConfig raw; // exactly what was parsed, for hashing and the manifest

    static PipelineConfig from_kv(const KeyValueConfig& kv);
    static PipelineConfig from_file(const std::string& path);

    std::string resolved_model_path() const;
    int32_t resolved_context_window() const;

    // Checked before running a command; throws ConfigError.
    void validate_common() const;

    // FNV-1a over the sorted raw key/value pairs.
    std::string config_hash() const;
};

// One JSON object per event, written to stderr.
void log_event(const nlohmann::json& event);

// Commands mirror the CLI one to one and return the summary the CLI prints.
nlohmann::json cmd_train(const PipelineConfig& config);
nlohmann::json cmd_contexts(const PipelineConfig& config, const std::string& target);
nlohmann::json cmd_grid(const PipelineConfig& config, const std::string& contexts_path);
nlohmann::json cmd_label(const PipelineConfig& config, const std::string& contexts_path,
                         const DbscanParams& params);
nlohmann::json cmd_pipeline(const PipelineConfig& config,
                            const std::vector<std::string>& targets);
nlohmann::json cmd_synth(const SyntheticSpec& spec, const std::string& corpus_path,
                         const std::string& key_path);

extern const char* const kToolVersion;

} // namespace wsd

#endif
