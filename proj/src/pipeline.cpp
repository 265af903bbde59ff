#include "wsd/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "wsd/context.hpp"
#include "wsd/label.hpp"
#include "io_util.hpp"

namespace fs = std::filesystem;

namespace wsd {

const char* const kToolVersion = "0.1.0";

namespace {

std::string trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto begin = s.find_first_not_of(ws);
    if (begin == std::string_view::npos) return {};
    auto end = s.find_last_not_of(ws);
    return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string_view rest = value;
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string item = trim(rest.substr(0, comma));
        if (!item.empty()) items.push_back(std::move(item));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return items;
}

int64_t to_int(const std::string& key, const std::string& value) {
    try {
        return io::parse_int(value, key);
    } catch (const Error&) {
        throw ConfigError("config key '" + key + "' expects an integer, got '" + value + "'");
    }
}

double to_double(const std::string& key, const std::string& value) {
    try {
        return io::parse_double(value, key);
    } catch (const Error&) {
        throw ConfigError("config key '" + key + "' expects a number, got '" + value + "'");
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config key '" + key + "' expects a boolean, got '" + value + "'");
}

std::string target_file(const PipelineConfig& config, const std::string& prefix,
                        const std::string& target, const std::string& ext) {
    return (fs::path(config.output_dir) / (prefix + "_" + target + ext)).string();
}

} // namespace

KeyValueConfig load_key_value_file(const std::string& path) {
    auto f = io::open_in(path);
    KeyValueConfig kv;
    std::string line;
    int64_t line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ": line " + std::to_string(line_no) +
                              " is not 'key = value'");
        std::string key = trim(std::string_view(trimmed).substr(0, eq));
        std::string value = trim(std::string_view(trimmed).substr(eq + 1));
        if (key.empty())
            throw ConfigError(path + ": line " + std::to_string(line_no) + " has an empty key");
        kv[key] = value;
    }
    return kv;
}

PipelineConfig PipelineConfig::from_kv(const KeyValueConfig& kv) {
    PipelineConfig c;
    c.raw = kv;
    c.grid = GridSpec::defaults();

    std::optional<double> eps_min, eps_max, eps_step;
    std::optional<std::string> eps_list;

    for (const auto& [key, value] : kv) {
        if (key == "corpus_path") c.corpus_path = value;
        else if (key == "corpus_format") {
            if (value == "text") c.corpus_format = CorpusFormat::PlainText;
            else if (value == "jsonl") c.corpus_format = CorpusFormat::JsonLines;
            else throw ConfigError("corpus_format must be 'text' or 'jsonl'");
        } else if (key == "jsonl_text_field") c.jsonl_text_field = value;
        else if (key == "lemma_dict_path") c.lemma_dict_path = value;
        else if (key == "dimension") c.training.dimension = static_cast<int32_t>(to_int(key, value));
        else if (key == "window") c.training.window = static_cast<int32_t>(to_int(key, value));
        else if (key == "min_count") c.training.min_count = to_int(key, value);
        else if (key == "epochs") c.training.epochs = static_cast<int32_t>(to_int(key, value));
        else if (key == "negative_samples")
            c.training.negative_samples = static_cast<int32_t>(to_int(key, value));
        else if (key == "learning_rate")
            c.training.learning_rate = static_cast<float>(to_double(key, value));
        else if (key == "learning_rate_min")
            c.training.learning_rate_min = static_cast<float>(to_double(key, value));
        else if (key == "seed") c.training.seed = static_cast<uint64_t>(to_int(key, value));
        else if (key == "workers") c.training.workers = static_cast<int32_t>(to_int(key, value));
        else if (key == "dynamic_window") c.training.dynamic_window = to_bool(key, value);
        else if (key == "subsample") c.training.subsample = to_double(key, value);
        else if (key == "unigram_table_size") c.training.unigram_table_size = to_int(key, value);
        else if (key == "targets") c.targets = split_list(value);
        else if (key == "context_window")
            c.context_window = static_cast<int32_t>(to_int(key, value));
        else if (key == "epsilons") eps_list = value;
        else if (key == "eps_min") eps_min = to_double(key, value);
        else if (key == "eps_max") eps_max = to_double(key, value);
        else if (key == "eps_step") eps_step = to_double(key, value);
        else if (key == "min_samples") {
            c.grid.min_samples.clear();
            for (const auto& item : split_list(value))
                c.grid.min_samples.push_back(static_cast<int32_t>(to_int(key, item)));
        } else if (key == "noise_low") c.grid.noise_low = to_double(key, value);
        else if (key == "noise_high") c.grid.noise_high = to_double(key, value);
        else if (key == "silhouette_noise_policy") {
            if (value == "as_cluster") c.silhouette.noise_policy = NoisePolicy::AsCluster;
            else if (value == "exclude") c.silhouette.noise_policy = NoisePolicy::Exclude;
            else throw ConfigError("silhouette_noise_policy must be 'as_cluster' or 'exclude'");
        } else if (key == "silhouette_sample_size")
            c.silhouette.sample_size = to_int(key, value);
        else if (key == "silhouette_seed")
            c.silhouette.seed = static_cast<uint64_t>(to_int(key, value));
        else if (key == "grid_threads")
            c.grid_run.threads = static_cast<int32_t>(to_int(key, value));
        else if (key == "distance_cache_mb")
            c.grid_run.cache_budget_bytes =
                static_cast<std::size_t>(to_int(key, value)) * 1024 * 1024;
        else if (key == "label_k") c.label_k = static_cast<int32_t>(to_int(key, value));
        else if (key == "label_exclude_target") c.label_exclude_target = to_bool(key, value);
        else if (key == "output_dir") c.output_dir = value;
        else if (key == "model_path") c.model_path = value;
        else if (key == "export_text_model") c.export_text_model = to_bool(key, value);
        else if (key == "export_context_csv") c.export_context_csv = to_bool(key, value);
        else if (key == "reuse_model") c.reuse_model = to_bool(key, value);
        else if (key == "synth_topics")
            c.synth.topics = static_cast<int32_t>(to_int(key, value));
        else if (key == "synth_words_per_topic")
            c.synth.words_per_topic = static_cast<int32_t>(to_int(key, value));
        else if (key == "synth_sentences_per_topic")
            c.synth.sentences_per_topic = static_cast<int32_t>(to_int(key, value));
        else if (key == "synth_sentence_len_min")
            c.synth.sentence_len_min = static_cast<int32_t>(to_int(key, value));
        else if (key == "synth_sentence_len_max")
            c.synth.sentence_len_max = static_cast<int32_t>(to_int(key, value));
        else if (key == "synth_pseudoword") c.synth.pseudoword = value;
        else if (key == "synth_injection_rate") c.synth.injection_rate = to_double(key, value);
        else if (key == "synth_inject_only_topic")
            c.synth.inject_only_topic = static_cast<int32_t>(to_int(key, value));
        else if (key == "synth_mixed_sentences")
            c.synth.mixed_sentences = static_cast<int32_t>(to_int(key, value));
        else if (key == "synth_seed") c.synth.seed = static_cast<uint64_t>(to_int(key, value));
        else if (key == "synth_corpus_path") c.synth_corpus_path = value;
        else if (key == "synth_key_path") c.synth_key_path = value;
        else throw ConfigError("unknown config key '" + key + "'");
    }

    if (eps_list) {
        c.grid.epsilons.clear();
        for (const auto& item : split_list(*eps_list))
            c.grid.epsilons.push_back(to_double("epsilons", item));
    } else if (eps_min || eps_max || eps_step) {
        if (!(eps_min && eps_max && eps_step))
            throw ConfigError("eps_min, eps_max and eps_step must be given together");
        c.grid.epsilons.clear();
        for (int64_t i = 0;; ++i) {
            const double e = *eps_min + static_cast<double>(i) * *eps_step;
            if (e > *eps_max + *eps_step * 1e-9) break;
            c.grid.epsilons.push_back(e);
        }
    }
    return c;
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    return from_kv(load_key_value_file(path));
}

std::string PipelineConfig::resolved_model_path() const {
    if (!model_path.empty()) return model_path;
    return (fs::path(output_dir) / "model.bin").string();
}

int32_t PipelineConfig::resolved_context_window() const {
    return context_window > 0 ? context_window : training.window;
}

void PipelineConfig::validate_common() const {
    if (corpus_path.empty()) throw ConfigError("corpus_path is required");
    if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
    if (context_window < 0) throw ConfigError("context_window must be >= 0");
    if (label_k < 1) throw ConfigError("label_k must be >= 1");
    if (silhouette.sample_size < 0)
        throw ConfigError("silhouette_sample_size must be >= 0");
    training.validate();
    grid.validate();
}

std::string PipelineConfig::config_hash() const {
    uint64_t hash = 0xcbf29ce484222325ULL; // FNV-1a
    auto mix = [&](std::string_view s) {
        for (unsigned char ch : s) {
            hash ^= ch;
            hash *= 0x100000001b3ULL;
        }
    };
    for (const auto& [key, value] : raw) {
        mix(key);
        mix("=");
        mix(value);
        mix("\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

void log_event(const nlohmann::json& event) {
    std::cerr << event.dump() << '\n';
}

namespace {

CorpusReaderOptions reader_options(const PipelineConfig& config, const LemmaDict* lemmas) {
    CorpusReaderOptions opts;
    opts.format = config.corpus_format;
    opts.jsonl_text_field = config.jsonl_text_field;
    opts.lemmas = lemmas;
    return opts;
}

// Re-reads the corpus and encodes it against an existing vocabulary.
EncodedCorpus encode_corpus(const PipelineConfig& config, const Vocabulary& vocab) {
    LemmaDict lemmas;
    const LemmaDict* lemma_ptr = nullptr;
    if (!config.lemma_dict_path.empty()) {
        lemmas = load_lemma_dict(config.lemma_dict_path);
        lemma_ptr = &lemmas;
    }
    EncodedCorpus corpus;
    for_each_document(config.corpus_path, reader_options(config, lemma_ptr),
                      [&](const TokenSequence& doc) {
                          auto ids = vocab.encode(doc);
                          corpus.total_tokens += static_cast<int64_t>(ids.size());
                          corpus.docs.push_back(std::move(ids));
                      });
    return corpus;
}

} // namespace

nlohmann::json cmd_train(const PipelineConfig& config) {
    config.validate_common();
    fs::create_directories(config.output_dir);

    log_event({{"event", "train_start"},
               {"corpus", config.corpus_path},
               {"dimension", config.training.dimension},
               {"workers", config.training.workers},
               {"seed", config.training.seed}});

    LemmaDict lemmas;
    const LemmaDict* lemma_ptr = nullptr;
    if (!config.lemma_dict_path.empty()) {
        lemmas = load_lemma_dict(config.lemma_dict_path);
        lemma_ptr = &lemmas;
    }
    LoadedCorpus loaded = load_corpus(config.corpus_path, reader_options(config, lemma_ptr),
                                      config.training.min_count);

    TrainStats stats;
    CbowModel model = train_cbow(loaded.corpus, loaded.vocab, config.training, &stats);

    const std::string model_path = config.resolved_model_path();
    const std::string vocab_path = (fs::path(config.output_dir) / "vocab.tsv").string();
    model.save(model_path);
    model.vocab().save_tsv(vocab_path);
    std::string text_path;
    if (config.export_text_model) {
        text_path = (fs::path(config.output_dir) / "model.txt").string();
        model.export_text(text_path);
    }

    nlohmann::json summary = {
        {"command", "train"},
        {"vocab_size", model.vocab().size()},
        {"dimension", model.dimension()},
        {"raw_tokens", loaded.raw_tokens},
        {"train_tokens", loaded.corpus.total_tokens},
        {"docs", loaded.corpus.docs.size()},
        {"epochs", config.training.epochs},
        {"final_mean_loss", stats.epoch_mean_loss.empty() ? 0.0 : stats.epoch_mean_loss.back()},
        {"wall_seconds", stats.wall_seconds},
        {"model_path", model_path},
        {"vocab_path", vocab_path},
    };
    if (!text_path.empty()) summary["text_path"] = text_path;
    log_event({{"event", "train_done"},
               {"vocab_size", model.vocab().size()},
               {"wall_seconds", stats.wall_seconds}});
    return summary;
}

nlohmann::json cmd_contexts(const PipelineConfig& config, const std::string& target) {
    config.validate_common();
    if (target.empty()) throw ConfigError("contexts requires a target word");
    fs::create_directories(config.output_dir);

    CbowModel model = CbowModel::load(config.resolved_model_path());
    EncodedCorpus corpus = encode_corpus(config, model.vocab());
    ContextVectorSet set = extract_context_vectors(corpus, model, target,
                                                   config.resolved_context_window());

    const std::string path = target_file(config, "contexts", target, ".bin");
    set.save(path);
    std::string csv_path;
    if (config.export_context_csv) {
        csv_path = target_file(config, "contexts", target, ".csv");
        set.export_csv(csv_path);
    }

    ContextSummary s = summarize(set);
    log_event({{"event", "contexts_done"}, {"target", target}, {"count", s.count}});
    nlohmann::json summary = {
        {"command", "contexts"}, {"target", target},       {"count", s.count},
        {"dimension", s.dimension}, {"skipped", s.skipped},
        {"serialized_bytes", s.serialized_bytes}, {"path", path},
    };
    if (!csv_path.empty()) summary["csv_path"] = csv_path;
    return summary;
}

nlohmann::json cmd_grid(const PipelineConfig& config, const std::string& contexts_path) {
    config.validate_common();
    fs::create_directories(config.output_dir);

    ContextVectorSet set = ContextVectorSet::load(contexts_path);
    log_event({{"event", "grid_start"},
               {"target", set.target},
               {"rows", config.grid.epsilons.size() * config.grid.min_samples.size()},
               {"points", set.size()}});

    auto rows = run_grid(set, config.grid, config.silhouette, config.grid_run);
    fill_scores(rows, config.grid);
    BestReport report = make_best_report(rows, config.grid);

    const std::string grid_path = target_file(config, "grid", set.target, ".csv");
    const std::string hm_clusters = target_file(config, "heatmap_clusters", set.target, ".csv");
    const std::string hm_scores = target_file(config, "heatmap_scores", set.target, ".csv");
    const std::string best_path = target_file(config, "best", set.target, ".json");
    export_grid_csv(rows, grid_path);
    export_heatmaps(rows, config.grid, hm_clusters, hm_scores);
    export_best_json(report, set.target, best_path);

    nlohmann::json summary = {
        {"command", "grid"},
        {"target", set.target},
        {"rows", rows.size()},
        {"admissible", report.admissible},
        {"ambiguous", report.ambiguous},
        {"grid_path", grid_path},
        {"heatmap_clusters_path", hm_clusters},
        {"heatmap_scores_path", hm_scores},
        {"best_path", best_path},
    };
    if (report.best) {
        summary["best"] = {{"epsilon", report.best->epsilon},
                           {"min_samples", report.best->min_samples},
                           {"n_clusters", report.best->n_clusters},
                           {"mean_silhouette", report.best->mean_silhouette},
                           {"noise_ratio", report.best->noise_ratio},
                           {"parameter_score", report.best->parameter_score}};
    }
    log_event({{"event", "grid_done"},
               {"target", set.target},
               {"admissible", report.admissible},
               {"ambiguous", report.ambiguous}});
    return summary;
}

nlohmann::json cmd_label(const PipelineConfig& config, const std::string& contexts_path,
                         const DbscanParams& params) {
    config.validate_common();
    params.validate();
    fs::create_directories(config.output_dir);

    ContextVectorSet set = ContextVectorSet::load(contexts_path);
    CbowModel model = CbowModel::load(config.resolved_model_path());

    PairwiseDistances dist(set.vectors, config.grid_run.cache_budget_bytes);
    Clustering clustering = dbscan(dist, params);
    clustering.mean_silhouette = mean_silhouette(dist, clustering.labels, config.silhouette);

    ClusterLabelReport report =
        build_report(set, clustering, model, config.label_k, config.label_exclude_target);

    const std::string json_path = target_file(config, "labels", set.target, ".json");
    const std::string table_path = target_file(config, "labels", set.target, ".txt");
    const std::string assignments_path = target_file(config, "assignments", set.target, ".csv");
    write_report_json(report, json_path);
    write_report_table(report, table_path);
    export_clustering_csv(set, clustering, assignments_path);

    nlohmann::json cluster_sizes = nlohmann::json::array();
    for (const auto& c : report.clusters)
        cluster_sizes.push_back({{"cluster_id", c.cluster_id}, {"member_count", c.member_count}});

    log_event({{"event", "label_done"},
               {"target", set.target},
               {"n_clusters", clustering.n_clusters}});
    return nlohmann::json{
        {"command", "label"},
        {"target", set.target},
        {"epsilon", params.epsilon},
        {"min_samples", params.min_samples},
        {"n_clusters", clustering.n_clusters},
        {"noise_ratio", clustering.noise_ratio},
        {"mean_silhouette", *clustering.mean_silhouette},
        {"clusters", cluster_sizes},
        {"report_path", json_path},
        {"table_path", table_path},
        {"assignments_path", assignments_path},
    };
}

nlohmann::json cmd_pipeline(const PipelineConfig& config,
                            const std::vector<std::string>& targets_arg) {
    config.validate_common();
    const std::vector<std::string>& targets =
        targets_arg.empty() ? config.targets : targets_arg;
    if (targets.empty())
        throw ConfigError("pipeline requires at least one target (config key 'targets')");
    fs::create_directories(config.output_dir);

    nlohmann::json summary = {{"command", "pipeline"}, {"targets", targets}};

    const std::string model_path = config.resolved_model_path();
    if (config.reuse_model && fs::exists(model_path)) {
        log_event({{"event", "model_reused"}, {"model_path", model_path}});
        summary["train"] = {{"reused", true}, {"model_path", model_path}};
    } else {
        summary["train"] = cmd_train(config);
    }

    CbowModel model = CbowModel::load(model_path);
    nlohmann::json results = nlohmann::json::object();
    nlohmann::json skipped = nlohmann::json::array();

    for (const auto& target : targets) {
        if (!model.vocab().id_of(target)) {
            log_event({{"event", "target_skipped"},
                       {"target", target},
                       {"reason", "not in vocabulary"}});
            skipped.push_back(target);
            continue;
        }
        nlohmann::json entry;
        entry["contexts"] = cmd_contexts(config, target);
        const std::string contexts_path = entry["contexts"]["path"].get<std::string>();
        entry["grid"] = cmd_grid(config, contexts_path);
        if (entry["grid"]["admissible"].get<bool>()) {
            DbscanParams params{entry["grid"]["best"]["epsilon"].get<double>(),
                                entry["grid"]["best"]["min_samples"].get<int32_t>()};
            entry["label"] = cmd_label(config, contexts_path, params);
        }
        results[target] = std::move(entry);
    }
    summary["results"] = std::move(results);
    summary["skipped_targets"] = skipped;

    nlohmann::json manifest = {
        {"tool_version", kToolVersion},
        {"config_hash", config.config_hash()},
        {"config", config.raw},
        {"targets", targets},
        {"skipped_targets", summary["skipped_targets"]},
        {"seeds",
         {{"training", config.training.seed}, {"silhouette", config.silhouette.seed}}},
        {"formats", {{"model", 1}, {"contexts", 1}, {"label_report", 1}, {"best", 1}}},
    };
    nlohmann::json verdicts = nlohmann::json::object();
    for (auto& [target, entry] : summary["results"].items()) {
        verdicts[target] = {{"ambiguous", entry["grid"]["ambiguous"]},
                            {"admissible", entry["grid"]["admissible"]}};
    }
    manifest["verdicts"] = std::move(verdicts);
    const std::string manifest_path = (fs::path(config.output_dir) / "manifest.json").string();
    {
        auto f = io::open_out(manifest_path);
        f << manifest.dump(2) << '\n';
        if (!f) throw IoError("write failed: " + manifest_path);
    }
    summary["manifest_path"] = manifest_path;
    return summary;
}

nlohmann::json cmd_synth(const SyntheticSpec& spec, const std::string& corpus_path,
                         const std::string& key_path_arg) {
    spec.validate();
    if (corpus_path.empty()) throw ConfigError("synth requires an output corpus path");
    const std::string key_path =
        key_path_arg.empty() ? corpus_path + ".key.json" : key_path_arg;
    if (auto dir = fs::path(corpus_path).parent_path(); !dir.empty())
        fs::create_directories(dir);
    if (auto dir = fs::path(key_path).parent_path(); !dir.empty())
        fs::create_directories(dir);

    SyntheticCorpus corpus = generate_synthetic(spec);
    write_synthetic(corpus, spec, corpus_path, key_path);
    log_event({{"event", "synth_done"},
               {"sentences", corpus.sentences.size()},
               {"injected", corpus.injected}});
    return nlohmann::json{
        {"command", "synth"},
        {"sentences", corpus.sentences.size()},
        {"topics", spec.topics},
        {"injected", corpus.injected},
        {"pseudoword", spec.pseudoword},
        {"corpus_path", corpus_path},
        {"key_path", key_path},
    };
}

} // namespace wsd
