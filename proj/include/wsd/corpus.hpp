#ifndef WSD_CORPUS_HPP
#define WSD_CORPUS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wsd {

using TokenSequence = std::vector<std::string>;

// Lowercased maximal runs of letters/digits/underscore/hyphen; every other
// byte separates tokens. Only ASCII letters are case-folded; bytes >= 0x80
// are kept verbatim so UTF-8 text passes through.
TokenSequence tokenize(std::string_view text);

// Optional token -> lemma rewrite, applied after lowercasing.
using LemmaDict = std::unordered_map<std::string, std::string>;

// TSV "word<TAB>lemma", one pair per line.
LemmaDict load_lemma_dict(const std::string& path);

TokenSequence apply_lemmas(TokenSequence tokens, const LemmaDict& lemmas);

// Word -> contiguous id plus corpus frequency. Ids are assigned by
// descending count, ties broken lexicographically, so a given corpus always
// produces the same vocabulary.
class Vocabulary {
public:
    // Streams documents in one pass, then filters by min_count.
    class Builder {
    public:
        void add(const TokenSequence& doc);
        Vocabulary finish(int64_t min_count) const;

    private:
        std::unordered_map<std::string, int64_t> counts_;
        int64_t total_tokens_ = 0;
    };

    std::optional<int32_t> id_of(std::string_view word) const;
    const std::string& word(int32_t id) const;
    int64_t count(int32_t id) const;
    int32_t size() const { return static_cast<int32_t>(words_.size()); }
    int64_t min_count() const { return min_count_; }
    int64_t total_tokens() const { return total_tokens_; }

    // OOV tokens are dropped; surviving ids keep their order.
    std::vector<int32_t> encode(const TokenSequence& doc) const;

    // "word<TAB>count" in id order (descending count, then lexicographic).
    void save_tsv(const std::string& path) const;
    static Vocabulary load_tsv(const std::string& path);

    // Rebuilds a vocabulary from serialized (word, count) entries; entries
    // may arrive in any order.
    static Vocabulary from_entries(std::vector<std::pair<std::string, int64_t>> entries,
                                   int64_t min_count, int64_t total_tokens);

private:
    friend class Builder;
    std::vector<std::string> words_;
    std::vector<int64_t> counts_;
    std::unordered_map<std::string, int32_t> index_;
    int64_t min_count_ = 1;
    int64_t total_tokens_ = 0;
};

// Whole corpus as id sequences; one input record = one document, and
// windows never cross document boundaries.
struct EncodedCorpus {
    std::vector<std::vector<int32_t>> docs;
    int64_t total_tokens = 0; // in-vocabulary tokens only
};

enum class CorpusFormat { PlainText, JsonLines };

struct CorpusReaderOptions {
    CorpusFormat format = CorpusFormat::PlainText;
    std::string jsonl_text_field = "text";
    const LemmaDict* lemmas = nullptr; // not owned
};

// Streams a corpus file record by record (plain text: one document per line;
// JSON lines: one object per line, text taken from the configured field).
// The callback receives each tokenized document.
void for_each_document(const std::string& path, const CorpusReaderOptions& opts,
                       const std::function<void(const TokenSequence&)>& fn);

// Two passes over the file: build the vocabulary, then encode.
struct LoadedCorpus {
    Vocabulary vocab;
    EncodedCorpus corpus;
    int64_t raw_tokens = 0;
};

LoadedCorpus load_corpus(const std::string& path, const CorpusReaderOptions& opts,
                         int64_t min_count);

} // namespace wsd

#endif
