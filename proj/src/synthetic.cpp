#include "wsd/synthetic.hpp"

#include <json.hpp>

#include "wsd/errors.hpp"
#include "io_util.hpp"

namespace wsd {

namespace {

// same generator as the silhouette subsampler; good enough for corpus synthesis
struct SplitMix {
    uint64_t state;
    explicit SplitMix(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t bound) { return next() % bound; }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

} // namespace

void SyntheticSpec::validate() const {
    if (topics < 1) throw ConfigError("topics must be >= 1");
    if (words_per_topic < 1) throw ConfigError("words_per_topic must be >= 1");
    if (sentences_per_topic < 1) throw ConfigError("sentences_per_topic must be >= 1");
    if (sentence_len_min < 2 || sentence_len_max < sentence_len_min)
        throw ConfigError("sentence length range must satisfy 2 <= min <= max");
    if (pseudoword.empty()) throw ConfigError("pseudoword must not be empty");
    if (injection_rate < 0.0 || injection_rate > 1.0)
        throw ConfigError("injection_rate must lie in [0, 1]");
    if (inject_only_topic >= topics)
        throw ConfigError("inject_only_topic is out of range");
    if (mixed_sentences < 0) throw ConfigError("mixed_sentences must be >= 0");
    if (mixed_sentences > 0 && topics < 2)
        throw ConfigError("mixed_sentences requires at least two topics");
}

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    SyntheticCorpus corpus;
    corpus.topic_vocab.resize(static_cast<std::size_t>(spec.topics));
    for (int32_t t = 0; t < spec.topics; ++t) {
        auto& vocab = corpus.topic_vocab[static_cast<std::size_t>(t)];
        vocab.reserve(static_cast<std::size_t>(spec.words_per_topic));
        for (int32_t w = 0; w < spec.words_per_topic; ++w)
            vocab.push_back("t" + std::to_string(t) + "w" + std::to_string(w));
    }

    SplitMix rng(spec.seed);
    const int32_t span = spec.sentence_len_max - spec.sentence_len_min + 1;
    corpus.sentences.reserve(
        static_cast<std::size_t>(spec.topics) * spec.sentences_per_topic);

    for (int32_t t = 0; t < spec.topics; ++t) {
        const auto& vocab = corpus.topic_vocab[static_cast<std::size_t>(t)];
        const bool can_inject = spec.inject_only_topic < 0 || spec.inject_only_topic == t;
        for (int32_t s = 0; s < spec.sentences_per_topic; ++s) {
            const int32_t len =
                spec.sentence_len_min +
                static_cast<int32_t>(rng.below(static_cast<uint64_t>(span)));
            std::vector<std::string> words;
            words.reserve(static_cast<std::size_t>(len));
            for (int32_t w = 0; w < len; ++w)
                words.push_back(vocab[rng.below(vocab.size())]);
            if (can_inject && rng.unit() < spec.injection_rate) {
                words[rng.below(words.size())] = spec.pseudoword;
                ++corpus.injected;
            }
            std::string sentence;
            for (std::size_t w = 0; w < words.size(); ++w) {
                if (w) sentence.push_back(' ');
                sentence += words[w];
            }
            corpus.sentences.push_back(std::move(sentence));
        }
    }

    for (int32_t s = 0; s < spec.mixed_sentences; ++s) {
        const int32_t a = static_cast<int32_t>(rng.below(static_cast<uint64_t>(spec.topics)));
        int32_t b = static_cast<int32_t>(rng.below(static_cast<uint64_t>(spec.topics - 1)));
        if (b >= a) ++b;
        const double ratio = rng.unit();
        const auto& va = corpus.topic_vocab[static_cast<std::size_t>(a)];
        const auto& vb = corpus.topic_vocab[static_cast<std::size_t>(b)];
        const int32_t len =
            spec.sentence_len_min +
            static_cast<int32_t>(rng.below(static_cast<uint64_t>(span)));
        std::vector<std::string> words;
        words.reserve(static_cast<std::size_t>(len));
        for (int32_t w = 0; w < len; ++w) {
            const auto& vocab = rng.unit() < ratio ? va : vb;
            words.push_back(vocab[rng.below(vocab.size())]);
        }
        words[rng.below(words.size())] = spec.pseudoword;
        ++corpus.injected;
        std::string sentence;
        for (std::size_t w = 0; w < words.size(); ++w) {
            if (w) sentence.push_back(' ');
            sentence += words[w];
        }
        corpus.sentences.push_back(std::move(sentence));
    }
    return corpus;
}

void write_synthetic(const SyntheticCorpus& corpus, const SyntheticSpec& spec,
                     const std::string& corpus_path, const std::string& key_path) {
    auto f = io::open_out(corpus_path);
    for (const auto& s : corpus.sentences) f << s << '\n';
    if (!f) throw IoError("write failed: " + corpus_path);

    nlohmann::json key = {
        {"pseudoword", spec.pseudoword},
        {"topics", corpus.topic_vocab},
        {"injected", corpus.injected},
        {"injection_rate", spec.injection_rate},
        {"inject_only_topic", spec.inject_only_topic},
        {"mixed_sentences", spec.mixed_sentences},
        {"sentences_per_topic", spec.sentences_per_topic},
        {"seed", spec.seed},
    };
    auto kf = io::open_out(key_path);
    kf << key.dump(2) << '\n';
    if (!kf) throw IoError("write failed: " + key_path);
}

} // namespace wsd
