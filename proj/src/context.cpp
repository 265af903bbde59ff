#include "wsd/context.hpp"

#include <cstring>

#include "wsd/errors.hpp"
#include "io_util.hpp"

namespace wsd {

namespace {

constexpr char kContextMagic[4] = {'W', 'S', 'D', 'C'};
constexpr uint32_t kContextVersion = 1;

bool all_zero(std::span<const float> row) {
    for (float x : row)
        if (x != 0.0f) return false;
    return true;
}

} // namespace

ContextVectorSet extract_context_vectors(const EncodedCorpus& corpus,
                                         const CbowModel& model,
                                         const std::string& target, int32_t window) {
    if (window < 1) throw ConfigError("context window must be >= 1");
    auto target_id = model.vocab().id_of(target);
    if (!target_id)
        throw DomainError("target word '" + target + "' is not in the vocabulary");

    const int32_t dim = model.dimension();
    const Matrix& in = model.in();

    // First pass sizes the matrix, second pass fills it.
    struct Hit {
        int32_t doc;
        int32_t pos;
    };
    std::vector<Hit> hits;
    for (std::size_t di = 0; di < corpus.docs.size(); ++di) {
        const auto& doc = corpus.docs[di];
        for (std::size_t p = 0; p < doc.size(); ++p)
            if (doc[p] == *target_id)
                hits.push_back({static_cast<int32_t>(di), static_cast<int32_t>(p)});
    }

    ContextVectorSet set;
    set.target = target;
    set.window = window;
    set.vectors = Matrix(hits.size(), static_cast<std::size_t>(dim));
    set.occurrences.reserve(hits.size());

    std::size_t kept = 0;
    for (const Hit& hit : hits) {
        const auto& doc = corpus.docs[static_cast<std::size_t>(hit.doc)];
        const int64_t len = static_cast<int64_t>(doc.size());
        const int64_t pos = hit.pos;
        auto row = set.vectors.row(kept);
        int32_t used = 0;
        for (int64_t p = pos - window; p <= pos + window; ++p) {
            if (p == pos || p < 0 || p >= len) continue;
            auto emb = in.row(static_cast<std::size_t>(doc[static_cast<std::size_t>(p)]));
            for (int32_t d = 0; d < dim; ++d) row[static_cast<std::size_t>(d)] += emb[d];
            ++used;
        }
        if (used == 0 || all_zero(row)) {
            // no cosine direction; clear any partial sums and drop the row
            for (auto& x : row) x = 0.0f;
            ++set.skipped;
            continue;
        }
        set.occurrences.push_back({hit.doc, hit.pos, used});
        ++kept;
    }

    // shrink to the kept rows
    if (kept != hits.size()) {
        Matrix trimmed(kept, static_cast<std::size_t>(dim));
        std::memcpy(trimmed.data(), set.vectors.data(), kept * dim * sizeof(float));
        set.vectors = std::move(trimmed);
    }
    return set;
}

ContextSummary summarize(const ContextVectorSet& set) {
    ContextSummary s;
    s.count = set.size();
    s.dimension = set.dimension();
    s.skipped = set.skipped;
    // mirrors the binary layout written by save()
    s.serialized_bytes = sizeof(kContextMagic) + sizeof(uint32_t) // magic, version
                         + sizeof(uint32_t) + set.target.size()   // target
                         + sizeof(int32_t)                        // window
                         + sizeof(uint64_t) + sizeof(uint32_t)    // N, D
                         + sizeof(int64_t)                        // skipped
                         + static_cast<uint64_t>(s.count) * s.dimension * sizeof(float)
                         + static_cast<uint64_t>(s.count) * 3 * sizeof(int32_t);
    return s;
}

void ContextVectorSet::save(const std::string& path) const {
    auto f = io::open_out(path, true);
    f.write(kContextMagic, sizeof(kContextMagic));
    io::write_pod(f, kContextVersion);
    io::write_string(f, target);
    io::write_pod(f, window);
    io::write_pod(f, static_cast<uint64_t>(vectors.rows()));
    io::write_pod(f, static_cast<uint32_t>(vectors.cols()));
    io::write_pod(f, skipped);
    f.write(reinterpret_cast<const char*>(vectors.data()),
            static_cast<std::streamsize>(vectors.size() * sizeof(float)));
    for (const auto& occ : occurrences) {
        io::write_pod(f, occ.doc_index);
        io::write_pod(f, occ.token_offset);
        io::write_pod(f, occ.used_context);
    }
    if (!f) throw IoError("write failed: " + path);
}

ContextVectorSet ContextVectorSet::load(const std::string& path) {
    auto f = io::open_in(path, true);
    char magic[4];
    f.read(magic, sizeof(magic));
    if (!f || std::memcmp(magic, kContextMagic, sizeof(magic)) != 0)
        throw FormatError("not a context-vector file: " + path);
    uint32_t version = 0;
    io::read_pod(f, version, "context file version");
    if (version != kContextVersion)
        throw FormatError("unsupported context file version " + std::to_string(version));

    ContextVectorSet set;
    set.target = io::read_string(f, "target word");
    io::read_pod(f, set.window, "window");
    uint64_t n = 0;
    uint32_t dim = 0;
    io::read_pod(f, n, "row count");
    io::read_pod(f, dim, "dimension");
    io::read_pod(f, set.skipped, "skipped count");

    const auto data_start = f.tellg();
    f.seekg(0, std::ios::end);
    const uint64_t remaining = static_cast<uint64_t>(f.tellg() - data_start);
    f.seekg(data_start);
    const uint64_t expected = n * dim * sizeof(float) + n * 3 * sizeof(int32_t);
    if (remaining != expected)
        throw ShapeError("context payload holds " + std::to_string(remaining) +
                         " bytes but the header declares " + std::to_string(expected));

    set.vectors = Matrix(n, dim);
    f.read(reinterpret_cast<char*>(set.vectors.data()),
           static_cast<std::streamsize>(set.vectors.size() * sizeof(float)));
    set.occurrences.resize(n);
    for (auto& occ : set.occurrences) {
        io::read_pod(f, occ.doc_index, "occurrence doc index");
        io::read_pod(f, occ.token_offset, "occurrence offset");
        io::read_pod(f, occ.used_context, "occurrence context count");
    }
    if (!f) throw FormatError("truncated context file: " + path);
    return set;
}

void ContextVectorSet::export_csv(const std::string& path) const {
    auto f = io::open_out(path);
    f << "occurrence_index,document_index,token_offset,used_context";
    for (int32_t d = 0; d < dimension(); ++d) f << ",v" << d;
    f << '\n';
    for (std::size_t i = 0; i < vectors.rows(); ++i) {
        const auto& occ = occurrences[i];
        f << i << ',' << occ.doc_index << ',' << occ.token_offset << ',' << occ.used_context;
        for (float x : vectors.row(i)) f << ',' << io::format_float(x);
        f << '\n';
    }
    if (!f) throw IoError("write failed: " + path);
}

} // namespace wsd
