#pragma once

// Persistent store of central values, one CSV row per family member:
//   family,q,gen_a,gen_b,re_value,im_value,method,trunc_err
// Floats are written in shortest round-trip form. Rows are appended while a
// run progresses and the file is rewritten in canonical order at the end,
// so an interrupted and resumed run leaves the same bytes as a clean one.

#include <complex>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cqlab/characters.hpp"
#include "cqlab/l_engine.hpp"

namespace cqlab {

inline constexpr std::string_view kCacheHeader = "family,q,gen_a,gen_b,re_value,im_value,method,trunc_err";

std::string format_double(double x);
std::string format_record(const LValueRecord& record);
// Returns nullopt when the line is not a complete row.
std::optional<LValueRecord> parse_record(std::string_view line);

class LValueCache {
public:
    // Loads `path` if it exists. A final line without a newline is treated
    // as the remnant of an interrupted write and dropped; any other
    // malformed line throws IOFailure.
    explicit LValueCache(std::filesystem::path path);

    const std::filesystem::path& path() const { return path_; }
    std::size_t size() const { return rows_.size(); }
    const LValueRecord* find(const CharacterId& id) const;

    // Writes the rows to the end of the file and flushes. Rows already
    // present are skipped.
    void append(std::span<const LValueRecord> records);

    // Rewrites the file in canonical order through a temporary file.
    void finalize();

    // Values aligned with slice.members; NaN where no row exists.
    std::vector<std::complex<double>> values_for(const FamilySlice& slice) const;

private:
    void write_header_if_new();

    std::filesystem::path path_;
    std::map<CharacterId, LValueRecord> rows_;
    std::uintmax_t valid_bytes_ = 0;  // length of the well-formed prefix on disk
    bool exists_ = false;
};

}  // namespace cqlab
