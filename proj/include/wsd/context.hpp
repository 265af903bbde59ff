#ifndef WSD_CONTEXT_HPP
#define WSD_CONTEXT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wsd/embedding.hpp"
#include "wsd/matrix.hpp"

namespace wsd {

struct Occurrence {
    int32_t doc_index = 0;     // document position in the encoded corpus
    int32_t token_offset = 0;  // position inside the OOV-filtered document
    int32_t used_context = 0;  // context tokens that contributed to the sum
};

// One row per surviving occurrence of the target word: the sum of the IN
// embeddings of up to `window` in-vocabulary tokens on each side, inside the
// document. Occurrences whose window contributes nothing are skipped (a zero
// vector has no cosine direction) and counted in `skipped`.
struct ContextVectorSet {
    std::string target;
    int32_t window = 0;
    Matrix vectors;
    std::vector<Occurrence> occurrences;
    int64_t skipped = 0;

    int64_t size() const { return static_cast<int64_t>(vectors.rows()); }
    int32_t dimension() const { return static_cast<int32_t>(vectors.cols()); }

    void save(const std::string& path) const;
    static ContextVectorSet load(const std::string& path);

    // occurrence_index, doc_index, token_offset, used_context, v0..v{D-1}
    void export_csv(const std::string& path) const;
};

// Throws DomainError if the target is not in the model vocabulary.
ContextVectorSet extract_context_vectors(const EncodedCorpus& corpus,
                                         const CbowModel& model,
                                         const std::string& target,
                                         int32_t window);

struct ContextSummary {
    int64_t count = 0;
    int32_t dimension = 0;
    int64_t skipped = 0;
    uint64_t serialized_bytes = 0;
};

ContextSummary summarize(const ContextVectorSet& set);

} // namespace wsd

#endif
