#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace apigen {

/// Base error type for the library. Carries a plain message; CLI maps it to exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parse failure in a line-oriented input file; remembers the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace util {

/// FNV-1a 64-bit. Stable across runs and platforms; used for cache keys.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

/// fnv1a64 rendered as a fixed-width lowercase hex string.
std::string fnv1a64_hex(std::string_view data);

/// Read a whole file into a string. Throws Error if the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Write bytes to `path` atomically: write a sibling temp file, then rename.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

/// Call `fn(line_number, line)` for every line of `path` (1-based, no trailing '\n').
void for_each_line(const std::filesystem::path& path,
                   const std::function<void(std::size_t, std::string_view)>& fn);

/// Split into lines, dropping a trailing empty line from a final '\n'.
std::vector<std::string> split_lines(std::string_view text);

/// Run `fn(i)` for i in [0, n) with at most `limit` tasks in flight.
/// Results are observed through side effects indexed by i, so output order
/// never depends on completion order.
void parallel_for(std::size_t n, std::size_t limit, const std::function<void(std::size_t)>& fn);

} // namespace util
} // namespace apigen
