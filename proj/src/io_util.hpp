#ifndef WSD_IO_UTIL_HPP
#define WSD_IO_UTIL_HPP

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <system_error>

#include "wsd/errors.hpp"

// On-disk integers and floats are little-endian; this code targets
// little-endian hosts only.
static_assert(std::endian::native == std::endian::little);

namespace wsd::io {

inline std::ofstream open_out(const std::string& path, bool binary = false) {
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f) throw IoError("cannot open for writing: " + path);
    return f;
}

inline std::ifstream open_in(const std::string& path, bool binary = false) {
    std::ifstream f(path, binary ? std::ios::binary : std::ios::in);
    if (!f) throw IoError("cannot open for reading: " + path);
    return f;
}

template <typename T>
void write_pod(std::ofstream& f, const T& value) {
    f.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
void read_pod(std::ifstream& f, T& value, const std::string& what) {
    f.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!f) throw FormatError("truncated file while reading " + what);
}

inline void write_string(std::ofstream& f, const std::string& s) {
    auto len = static_cast<uint32_t>(s.size());
    write_pod(f, len);
    f.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string read_string(std::ifstream& f, const std::string& what) {
    uint32_t len = 0;
    read_pod(f, len, what);
    std::string s(len, '\0');
    f.read(s.data(), len);
    if (!f) throw FormatError("truncated file while reading " + what);
    return s;
}

// Shortest representation that parses back to the same value.
inline std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw Error("double formatting failed");
    return std::string(buf, end);
}

inline std::string format_float(float v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw Error("float formatting failed");
    return std::string(buf, end);
}

inline double parse_double(std::string_view s, const std::string& what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw FormatError("bad numeric field in " + what + ": '" + std::string(s) + "'");
    return v;
}

inline int64_t parse_int(std::string_view s, const std::string& what) {
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw FormatError("bad integer field in " + what + ": '" + std::string(s) + "'");
    return v;
}

} // namespace wsd::io

#endif
