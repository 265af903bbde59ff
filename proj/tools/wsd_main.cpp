// Command-line driver for the word-sense toolkit. Links against the C API
// only (wsd.h); all heavy lifting happens in the shared library.

#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wsd.h"

namespace {

struct ConfigDeleter {
    void operator()(ws_config* c) const { ws_config_free(c); }
};
using ConfigPtr = std::unique_ptr<ws_config, ConfigDeleter>;

struct ModelDeleter {
    void operator()(ws_model* m) const { ws_model_close(m); }
};
using ModelPtr = std::unique_ptr<ws_model, ModelDeleter>;

[[noreturn]] void die(ws_status status) {
    nlohmann::json event = {{"event", "error"}, {"message", ws_last_error()}};
    std::fprintf(stderr, "%s\n", event.dump().c_str());
    std::exit(static_cast<int>(status));
}

void check(ws_status status) {
    if (status != WS_OK) die(status);
}

// Loads --config if given, then applies --set overrides in order.
ConfigPtr make_config(const std::string& config_path,
                      const std::vector<std::string>& overrides) {
    ws_config* raw = nullptr;
    if (config_path.empty()) check(ws_config_create(&raw));
    else check(ws_config_load(config_path.c_str(), &raw));
    ConfigPtr config(raw);

    for (const auto& kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::fprintf(stderr, "override '%s' is not key=value\n", kv.c_str());
            std::exit(WS_ERR_CONFIG);
        }
        check(ws_config_set(config.get(), kv.substr(0, eq).c_str(),
                            kv.substr(eq + 1).c_str()));
    }
    return config;
}

void print_summary(char* summary) {
    if (!summary) return;
    std::printf("%s\n", summary);
    ws_string_free(summary);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"word sense induction toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(ws_version()));

    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("-c,--config", config_path, "flat key=value configuration file")
        ->expected(1);
    app.add_option("-s,--set", overrides, "override a config key (key=value, repeatable)");

    auto* train = app.add_subcommand("train", "train the dual-space embedding model");

    auto* contexts =
        app.add_subcommand("contexts", "extract per-occurrence context vectors");
    std::string target;
    contexts->add_option("-t,--target", target, "target word")->required();

    auto* grid = app.add_subcommand("grid", "sweep the clustering parameter grid");
    std::string contexts_path;
    grid->add_option("--contexts", contexts_path, "context-vector file")->required();

    auto* label = app.add_subcommand("label", "cluster at fixed parameters and label senses");
    std::string label_contexts, best_path;
    double epsilon = 0.0;
    int min_samples = 0;
    label->add_option("--contexts", label_contexts, "context-vector file")->required();
    label->add_option("-e,--epsilon", epsilon, "cosine distance radius");
    label->add_option("-m,--min-samples", min_samples, "density threshold");
    label->add_option("--best", best_path,
                      "best-parameters JSON produced by 'grid' (alternative to -e/-m)");

    auto* pipeline =
        app.add_subcommand("pipeline", "train, extract, sweep, and label in one run");
    std::vector<std::string> pipeline_targets;
    pipeline->add_option("-t,--target", pipeline_targets,
                         "target word (repeatable; defaults to config 'targets')");

    auto* synth = app.add_subcommand("synth", "generate a synthetic topic-mixture corpus");
    std::string synth_out, synth_key;
    synth->add_option("-o,--out", synth_out, "corpus output path")->required();
    synth->add_option("--key", synth_key, "answer-key JSON path (default <out>.key.json)");
    std::vector<std::string> synth_sets;
    synth->add_option("--synth-set", synth_sets,
                      "synthetic generator key override (key=value, repeatable)");

    auto* neighbors = app.add_subcommand("neighbors", "query nearest neighbors of a word");
    std::string model_path, query_word, space_name = "in";
    int k = 10;
    neighbors->add_option("--model", model_path, "model file")->required();
    neighbors->add_option("-w,--word", query_word, "query word")->required();
    neighbors->add_option("--space", space_name, "embedding space: in or out")
        ->check(CLI::IsMember({"in", "out"}));
    neighbors->add_option("-k", k, "neighbor count");

    CLI11_PARSE(app, argc, argv);

    if (*neighbors) {
        ws_model* raw = nullptr;
        check(ws_model_open(model_path.c_str(), &raw));
        ModelPtr model(raw);
        char* json = nullptr;
        check(ws_model_neighbors(model.get(), query_word.c_str(),
                                 space_name == "in" ? 0 : 1, k, &json));
        print_summary(json);
        return WS_OK;
    }

    ConfigPtr config = make_config(config_path, overrides);
    char* summary = nullptr;

    if (*train) {
        check(ws_cmd_train(config.get(), &summary));
    } else if (*contexts) {
        check(ws_cmd_contexts(config.get(), target.c_str(), &summary));
    } else if (*grid) {
        check(ws_cmd_grid(config.get(), contexts_path.c_str(), &summary));
    } else if (*label) {
        if (!best_path.empty()) {
            std::ifstream f(best_path);
            if (!f) {
                std::fprintf(stderr, "cannot open best-parameters file: %s\n",
                             best_path.c_str());
                return WS_ERR_IO;
            }
            nlohmann::json best = nlohmann::json::parse(f, nullptr, false);
            if (best.is_discarded() || !best.value("admissible", false) ||
                !best.contains("params")) {
                std::fprintf(stderr, "%s does not contain admissible parameters\n",
                             best_path.c_str());
                return WS_ERR_DOMAIN;
            }
            epsilon = best["params"]["epsilon"].get<double>();
            min_samples = best["params"]["min_samples"].get<int>();
        }
        check(ws_cmd_label(config.get(), label_contexts.c_str(), epsilon, min_samples,
                           &summary));
    } else if (*pipeline) {
        std::vector<const char*> raw_targets;
        raw_targets.reserve(pipeline_targets.size());
        for (const auto& t : pipeline_targets) raw_targets.push_back(t.c_str());
        check(ws_cmd_pipeline(config.get(),
                              raw_targets.empty() ? nullptr : raw_targets.data(),
                              static_cast<int>(raw_targets.size()), &summary));
    } else if (*synth) {
        check(ws_config_set(config.get(), "synth_corpus_path", synth_out.c_str()));
        if (!synth_key.empty())
            check(ws_config_set(config.get(), "synth_key_path", synth_key.c_str()));
        for (const auto& kv : synth_sets) {
            auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0) {
                std::fprintf(stderr, "override '%s' is not key=value\n", kv.c_str());
                return WS_ERR_CONFIG;
            }
            check(ws_config_set(config.get(), ("synth_" + kv.substr(0, eq)).c_str(),
                                kv.substr(eq + 1).c_str()));
        }
        check(ws_cmd_synth(config.get(), &summary));
    }

    print_summary(summary);
    return WS_OK;
}
