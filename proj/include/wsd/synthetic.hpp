#ifndef WSD_SYNTHETIC_HPP
#define WSD_SYNTHETIC_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace wsd {

// Topic-mixture corpus generator for experiments and tests. Each topic gets a
// disjoint vocabulary ("t0w0", "t0w1", ...); sentences draw uniformly from
// one topic's vocabulary, and the pseudoword replaces one token in a
// configurable fraction of sentences.
struct SyntheticSpec {
    int32_t topics = 2;
    int32_t words_per_topic = 50;
    int32_t sentences_per_topic = 10000;
    int32_t sentence_len_min = 8;
    int32_t sentence_len_max = 12;
    std::string pseudoword = "targetword";
    double injection_rate = 0.1;
    // When >= 0, only this topic receives injections (control corpora).
    int32_t inject_only_topic = -1;
    // Extra sentences that blend two topics with a random per-sentence ratio;
    // each carries one pseudoword, modeling genuinely ambiguous usage.
    int32_t mixed_sentences = 0;
    uint64_t seed = 1;

    void validate() const; // throws ConfigError
};

struct SyntheticCorpus {
    std::vector<std::string> sentences; // one document per entry
    std::vector<std::vector<std::string>> topic_vocab;
    int64_t injected = 0;
};

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec);

// Writes the corpus (one sentence per line) plus an answer key JSON with the
// topic vocabularies, pseudoword, and injection counts.
void write_synthetic(const SyntheticCorpus& corpus, const SyntheticSpec& spec,
                     const std::string& corpus_path, const std::string& key_path);

} // namespace wsd

#endif
