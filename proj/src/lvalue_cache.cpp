#include "cqlab/lvalue_cache.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cqlab/errors.hpp"

namespace cqlab {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

bool parse_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_u64(std::string_view s, u64& out) {
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_integer(std::string_view s, Integer& out) {
    if (s.empty()) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    out = Integer(std::string(s));
    return true;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string format_record(const LValueRecord& r) {
    std::string line;
    line += to_string(r.id.family);
    line += ',';
    line += std::to_string(r.id.q);
    line += ',';
    line += r.id.gen_a.get_str();
    line += ',';
    line += r.id.gen_b.get_str();
    line += ',';
    line += format_double(r.value.real());
    line += ',';
    line += format_double(r.value.imag());
    line += ',';
    line += to_string(r.method);
    line += ',';
    line += format_double(r.truncation_error);
    return line;
}

std::optional<LValueRecord> parse_record(std::string_view line) {
    const auto fields = split_commas(line);
    if (fields.size() != 8) return std::nullopt;
    LValueRecord r;
    try {
        r.id.family = parse_family(fields[0]);
        r.method = parse_method(fields[6]);
    } catch (const Error&) {
        return std::nullopt;
    }
    double re = 0, im = 0;
    if (!parse_u64(fields[1], r.id.q) || !parse_integer(fields[2], r.id.gen_a) ||
        !parse_integer(fields[3], r.id.gen_b) || !parse_double(fields[4], re) || !parse_double(fields[5], im) ||
        !parse_double(fields[7], r.truncation_error)) {
        return std::nullopt;
    }
    r.value = {re, im};
    return r;
}

LValueCache::LValueCache(std::filesystem::path path) : path_(std::move(path)) {
    std::error_code ec;
    if (!std::filesystem::exists(path_, ec)) return;
    std::ifstream in(path_, std::ios::binary);
    if (!in) throw IOFailure("cannot read cache " + path_.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    exists_ = true;

    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        const std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) break;  // interrupted final line
        const std::string_view line(text.data() + pos, end - pos);
        ++line_no;
        if (line_no == 1) {
            if (line != kCacheHeader) throw IOFailure("unexpected cache header in " + path_.string());
        } else {
            auto record = parse_record(line);
            if (!record) {
                throw IOFailure("malformed cache row " + std::to_string(line_no) + " in " + path_.string());
            }
            rows_.insert_or_assign(record->id, std::move(*record));
        }
        pos = end + 1;
    }
    valid_bytes_ = pos;
    if (line_no == 0) valid_bytes_ = 0;
}

const LValueRecord* LValueCache::find(const CharacterId& id) const {
    const auto it = rows_.find(id);
    return it == rows_.end() ? nullptr : &it->second;
}

void LValueCache::write_header_if_new() {
    std::error_code ec;
    if (exists_) {
        // Drop any partial line left by an interrupted writer.
        if (std::filesystem::file_size(path_, ec) != valid_bytes_) {
            std::filesystem::resize_file(path_, valid_bytes_, ec);
            if (ec) throw IOFailure("cannot trim cache " + path_.string());
        }
        if (valid_bytes_ > 0) return;
    }
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path(), ec);
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    if (!out) throw IOFailure("cannot write cache " + path_.string());
    out << kCacheHeader << '\n';
    out.flush();
    if (!out) throw IOFailure("cannot write cache " + path_.string());
    exists_ = true;
    valid_bytes_ = kCacheHeader.size() + 1;
}

void LValueCache::append(std::span<const LValueRecord> records) {
    write_header_if_new();
    std::string chunk;
    for (const auto& r : records) {
        if (rows_.count(r.id)) continue;
        chunk += format_record(r);
        chunk += '\n';
        rows_.emplace(r.id, r);
    }
    if (chunk.empty()) return;
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) throw IOFailure("cannot append to cache " + path_.string());
    out << chunk;
    out.flush();
    if (!out) throw IOFailure("cannot append to cache " + path_.string());
    valid_bytes_ += chunk.size();
}

void LValueCache::finalize() {
    std::error_code ec;
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path(), ec);
    const auto tmp = std::filesystem::path(path_.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IOFailure("cannot write " + tmp.string());
        out << kCacheHeader << '\n';
        for (const auto& [id, r] : rows_) out << format_record(r) << '\n';
        out.flush();
        if (!out) throw IOFailure("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path_, ec);
    if (ec) throw IOFailure("cannot replace cache " + path_.string());
    exists_ = true;
    valid_bytes_ = std::filesystem::file_size(path_, ec);
}

std::vector<std::complex<double>> LValueCache::values_for(const FamilySlice& slice) const {
    const double nan = std::nan("");
    std::vector<std::complex<double>> out;
    out.reserve(slice.members.size());
    for (const auto& chi : slice.members) {
        const auto* r = find(chi.id());
        out.push_back(r ? r->value : std::complex<double>(nan, nan));
    }
    return out;
}

}  // namespace cqlab
