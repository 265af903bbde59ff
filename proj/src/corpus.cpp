#include "wsd/corpus.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "wsd/errors.hpp"
#include "io_util.hpp"

namespace wsd {

namespace {

bool is_token_byte(unsigned char c) {
    if (c >= 0x80) return true; // keep UTF-8 sequences intact
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-';
}

char fold(unsigned char c) {
    if (c >= 'A' && c <= 'Z') return static_cast<char>(c - 'A' + 'a');
    return static_cast<char>(c);
}

} // namespace

TokenSequence tokenize(std::string_view text) {
    TokenSequence tokens;
    std::string current;
    for (unsigned char c : text) {
        if (is_token_byte(c)) {
            current.push_back(fold(c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

LemmaDict load_lemma_dict(const std::string& path) {
    auto f = io::open_in(path);
    LemmaDict dict;
    std::string line;
    int64_t line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
            throw FormatError("lemma dictionary " + path + ": line " +
                              std::to_string(line_no) + " is not 'word<TAB>lemma'");
        dict[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return dict;
}

TokenSequence apply_lemmas(TokenSequence tokens, const LemmaDict& lemmas) {
    for (auto& t : tokens) {
        auto it = lemmas.find(t);
        if (it != lemmas.end()) t = it->second;
    }
    return tokens;
}

void Vocabulary::Builder::add(const TokenSequence& doc) {
    for (const auto& t : doc) {
        ++counts_[t];
        ++total_tokens_;
    }
}

Vocabulary Vocabulary::Builder::finish(int64_t min_count) const {
    if (min_count < 1) throw ConfigError("min_count must be >= 1");
    std::vector<std::pair<std::string, int64_t>> entries;
    entries.reserve(counts_.size());
    for (const auto& [word, count] : counts_) {
        if (count >= min_count) entries.emplace_back(word, count);
    }
    if (entries.empty())
        throw DomainError("vocabulary is empty after min_count filtering");
    return Vocabulary::from_entries(std::move(entries), min_count, total_tokens_);
}

Vocabulary Vocabulary::from_entries(std::vector<std::pair<std::string, int64_t>> entries,
                                    int64_t min_count, int64_t total_tokens) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    Vocabulary v;
    v.min_count_ = min_count;
    v.total_tokens_ = total_tokens;
    v.words_.reserve(entries.size());
    v.counts_.reserve(entries.size());
    for (auto& [word, count] : entries) {
        v.index_.emplace(word, static_cast<int32_t>(v.words_.size()));
        v.words_.push_back(std::move(word));
        v.counts_.push_back(count);
    }
    return v;
}

std::optional<int32_t> Vocabulary::id_of(std::string_view word) const {
    auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const std::string& Vocabulary::word(int32_t id) const {
    if (id < 0 || id >= size()) throw DomainError("word id out of range");
    return words_[static_cast<std::size_t>(id)];
}

int64_t Vocabulary::count(int32_t id) const {
    if (id < 0 || id >= size()) throw DomainError("word id out of range");
    return counts_[static_cast<std::size_t>(id)];
}

std::vector<int32_t> Vocabulary::encode(const TokenSequence& doc) const {
    std::vector<int32_t> ids;
    ids.reserve(doc.size());
    for (const auto& t : doc) {
        auto it = index_.find(t);
        if (it != index_.end()) ids.push_back(it->second);
    }
    return ids;
}

void Vocabulary::save_tsv(const std::string& path) const {
    auto f = io::open_out(path);
    for (int32_t id = 0; id < size(); ++id) {
        f << words_[static_cast<std::size_t>(id)] << '\t'
          << counts_[static_cast<std::size_t>(id)] << '\n';
    }
    if (!f) throw IoError("write failed: " + path);
}

Vocabulary Vocabulary::load_tsv(const std::string& path) {
    auto f = io::open_in(path);
    std::vector<std::pair<std::string, int64_t>> entries;
    int64_t total = 0;
    std::string line;
    int64_t line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw FormatError("vocabulary " + path + ": line " + std::to_string(line_no) +
                              " is not 'word<TAB>count'");
        int64_t count = io::parse_int(std::string_view(line).substr(tab + 1), path);
        entries.emplace_back(line.substr(0, tab), count);
        total += count;
    }
    if (entries.empty()) throw DomainError("vocabulary file is empty: " + path);
    int64_t min_count = entries.front().second;
    for (const auto& [_, c] : entries) min_count = std::min(min_count, c);
    // Counts only cover kept words, so this is a lower bound on the corpus size.
    return from_entries(std::move(entries), min_count, total);
}

void for_each_document(const std::string& path, const CorpusReaderOptions& opts,
                       const std::function<void(const TokenSequence&)>& fn) {
    auto f = io::open_in(path);
    std::string line;
    int64_t line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        TokenSequence tokens;
        if (opts.format == CorpusFormat::JsonLines) {
            if (line.empty()) continue;
            nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
            if (record.is_discarded())
                throw FormatError(path + ": line " + std::to_string(line_no) +
                                  " is not valid JSON");
            auto it = record.find(opts.jsonl_text_field);
            if (it == record.end() || !it->is_string())
                throw FormatError(path + ": line " + std::to_string(line_no) +
                                  " has no string field '" + opts.jsonl_text_field + "'");
            tokens = tokenize(it->get<std::string>());
        } else {
            tokens = tokenize(line);
        }
        if (opts.lemmas) tokens = apply_lemmas(std::move(tokens), *opts.lemmas);
        fn(tokens);
    }
}

LoadedCorpus load_corpus(const std::string& path, const CorpusReaderOptions& opts,
                         int64_t min_count) {
    LoadedCorpus result;
    Vocabulary::Builder builder;
    int64_t raw_tokens = 0;
    for_each_document(path, opts, [&](const TokenSequence& doc) {
        raw_tokens += static_cast<int64_t>(doc.size());
        builder.add(doc);
    });
    result.vocab = builder.finish(min_count);
    result.raw_tokens = raw_tokens;
    for_each_document(path, opts, [&](const TokenSequence& doc) {
        auto ids = result.vocab.encode(doc);
        result.corpus.total_tokens += static_cast<int64_t>(ids.size());
        result.corpus.docs.push_back(std::move(ids));
    });
    return result;
}

} // namespace wsd
