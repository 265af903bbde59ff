#include "wsd.h"

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "wsd/embedding.hpp"
#include "wsd/errors.hpp"
#include "wsd/pipeline.hpp"

namespace {

thread_local std::string g_last_error;

struct ConfigHandle {
    wsd::KeyValueConfig kv;
};

struct ModelHandle {
    wsd::CbowModel model;
};

ws_status fail(ws_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

ws_status classify(const std::exception& e) {
    if (dynamic_cast<const wsd::ConfigError*>(&e)) return fail(WS_ERR_CONFIG, e.what());
    if (dynamic_cast<const wsd::IoError*>(&e)) return fail(WS_ERR_IO, e.what());
    if (dynamic_cast<const wsd::DomainError*>(&e)) return fail(WS_ERR_DOMAIN, e.what());
    return fail(WS_ERR, e.what());
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Shared wrapper: builds the typed config, runs the command, and marshals
// the summary.
template <typename Fn>
ws_status run_command(ws_config* config, char** summary_json, Fn&& fn) {
    if (!config) return fail(WS_ERR_CONFIG, "config handle is null");
    try {
        auto* handle = reinterpret_cast<ConfigHandle*>(config);
        wsd::PipelineConfig typed = wsd::PipelineConfig::from_kv(handle->kv);
        nlohmann::json summary = fn(typed);
        if (summary_json) *summary_json = dup_string(summary.dump());
        return WS_OK;
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        return fail(WS_ERR, "unknown failure");
    }
}

} // namespace

extern "C" {

const char* ws_version(void) { return wsd::kToolVersion; }

const char* ws_last_error(void) { return g_last_error.c_str(); }

void ws_string_free(char* s) { delete[] s; }

ws_status ws_config_create(ws_config** out) {
    if (!out) return fail(WS_ERR_CONFIG, "output pointer is null");
    *out = reinterpret_cast<ws_config*>(new ConfigHandle());
    return WS_OK;
}

ws_status ws_config_load(const char* path, ws_config** out) {
    if (!path || !out) return fail(WS_ERR_CONFIG, "path or output pointer is null");
    try {
        auto handle = std::make_unique<ConfigHandle>();
        handle->kv = wsd::load_key_value_file(path);
        // validate eagerly so bad files fail at load time
        wsd::PipelineConfig::from_kv(handle->kv);
        *out = reinterpret_cast<ws_config*>(handle.release());
        return WS_OK;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

ws_status ws_config_set(ws_config* config, const char* key, const char* value) {
    if (!config || !key || !value) return fail(WS_ERR_CONFIG, "null argument");
    try {
        auto* handle = reinterpret_cast<ConfigHandle*>(config);
        wsd::KeyValueConfig candidate = handle->kv;
        candidate[key] = value;
        wsd::PipelineConfig::from_kv(candidate); // reject unknown keys and bad values
        handle->kv = std::move(candidate);
        return WS_OK;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

ws_status ws_config_get(const ws_config* config, const char* key, char** value_out) {
    if (!config || !key || !value_out) return fail(WS_ERR_CONFIG, "null argument");
    const auto* handle = reinterpret_cast<const ConfigHandle*>(config);
    auto it = handle->kv.find(key);
    if (it == handle->kv.end())
        return fail(WS_ERR_CONFIG, std::string("config key not set: ") + key);
    *value_out = dup_string(it->second);
    return WS_OK;
}

void ws_config_free(ws_config* config) {
    delete reinterpret_cast<ConfigHandle*>(config);
}

ws_status ws_cmd_train(ws_config* config, char** summary_json) {
    return run_command(config, summary_json,
                       [](const wsd::PipelineConfig& c) { return wsd::cmd_train(c); });
}

ws_status ws_cmd_contexts(ws_config* config, const char* target, char** summary_json) {
    if (!target) return fail(WS_ERR_CONFIG, "target is null");
    std::string t = target;
    return run_command(config, summary_json, [&](const wsd::PipelineConfig& c) {
        return wsd::cmd_contexts(c, t);
    });
}

ws_status ws_cmd_grid(ws_config* config, const char* contexts_path, char** summary_json) {
    if (!contexts_path) return fail(WS_ERR_CONFIG, "contexts path is null");
    std::string path = contexts_path;
    return run_command(config, summary_json, [&](const wsd::PipelineConfig& c) {
        return wsd::cmd_grid(c, path);
    });
}

ws_status ws_cmd_label(ws_config* config, const char* contexts_path, double epsilon,
                       int min_samples, char** summary_json) {
    if (!contexts_path) return fail(WS_ERR_CONFIG, "contexts path is null");
    std::string path = contexts_path;
    return run_command(config, summary_json, [&](const wsd::PipelineConfig& c) {
        return wsd::cmd_label(c, path, {epsilon, min_samples});
    });
}

ws_status ws_cmd_pipeline(ws_config* config, const char* const* targets, int n_targets,
                          char** summary_json) {
    std::vector<std::string> target_list;
    if (targets) {
        for (int i = 0; i < n_targets; ++i) {
            if (!targets[i]) return fail(WS_ERR_CONFIG, "target list contains a null entry");
            target_list.emplace_back(targets[i]);
        }
    }
    return run_command(config, summary_json, [&](const wsd::PipelineConfig& c) {
        return wsd::cmd_pipeline(c, target_list);
    });
}

ws_status ws_cmd_synth(ws_config* config, char** summary_json) {
    return run_command(config, summary_json, [](const wsd::PipelineConfig& c) {
        return wsd::cmd_synth(c.synth, c.synth_corpus_path, c.synth_key_path);
    });
}

ws_status ws_model_open(const char* path, ws_model** out) {
    if (!path || !out) return fail(WS_ERR_CONFIG, "path or output pointer is null");
    try {
        auto handle = std::make_unique<ModelHandle>();
        handle->model = wsd::CbowModel::load(path);
        *out = reinterpret_cast<ws_model*>(handle.release());
        return WS_OK;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

void ws_model_close(ws_model* model) {
    delete reinterpret_cast<ModelHandle*>(model);
}

int64_t ws_model_vocab_size(const ws_model* model) {
    if (!model) return -1;
    return reinterpret_cast<const ModelHandle*>(model)->model.vocab().size();
}

int32_t ws_model_dimension(const ws_model* model) {
    if (!model) return -1;
    return reinterpret_cast<const ModelHandle*>(model)->model.dimension();
}

int ws_model_contains(const ws_model* model, const char* word) {
    if (!model || !word) return 0;
    return reinterpret_cast<const ModelHandle*>(model)->model.vocab().id_of(word) ? 1 : 0;
}

ws_status ws_model_neighbors(const ws_model* model, const char* word, int space, int k,
                             char** json_out) {
    if (!model || !word || !json_out) return fail(WS_ERR_CONFIG, "null argument");
    if (space != 0 && space != 1) return fail(WS_ERR_CONFIG, "space must be 0 (IN) or 1 (OUT)");
    try {
        const auto& m = reinterpret_cast<const ModelHandle*>(model)->model;
        auto id = m.vocab().id_of(word);
        if (!id) throw wsd::DomainError(std::string("word not in vocabulary: ") + word);
        const wsd::Matrix& matrix = space == 0 ? m.in() : m.out();
        auto row = matrix.row(static_cast<std::size_t>(*id));
        auto neighbors =
            wsd::nearest_neighbors(m, space == 0 ? wsd::Space::In : wsd::Space::Out, row, k);
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& n : neighbors)
            arr.push_back({{"word", n.word}, {"similarity", n.similarity}});
        *json_out = dup_string(arr.dump());
        return WS_OK;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

} // extern "C"
