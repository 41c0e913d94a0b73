#include "massaction/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "massaction/errors.hpp"
#include "massaction/spatial.hpp"

namespace massaction {

std::string format_double(double v) {
    std::array<char, 64> buf;
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

std::string format_fixed(double v, int decimals) {
    std::array<char, 512> buf;
    auto [end, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, decimals);
    return std::string(buf.data(), end);
}

std::optional<double> parse_double(std::string_view token) {
    if (!token.empty() && token.front() == '+') {
        token.remove_prefix(1);
    }
    if (token.empty()) {
        return std::nullopt;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::optional<std::uint64_t> parse_u64(std::string_view token) {
    if (!token.empty() && token.front() == '+') {
        token.remove_prefix(1);
    }
    if (token.empty()) {
        return std::nullopt;
    }
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        return std::nullopt;
    }
    return value;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw InputError("cannot read file: " + path.string());
    }
    return std::move(buf).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw SimulationError("cannot open file for writing: " + path.string());
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) {
        throw SimulationError("cannot write file: " + path.string());
    }
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (const char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string trajectory_csv(const std::vector<std::string>& species,
                           const std::vector<std::vector<double>>& rows) {
    std::string out = "t";
    for (const auto& name : species) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (std::size_t t = 0; t < rows.size(); ++t) {
        out += std::to_string(t);
        for (const double v : rows[t]) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::string ensemble_csv(const std::vector<std::string>& species,
                         const std::vector<std::vector<double>>& mean,
                         const std::vector<std::vector<double>>& stddev) {
    std::string out = "t";
    for (const auto& name : species) {
        out += ',';
        out += name;
        out += "_mean";
    }
    for (const auto& name : species) {
        out += ',';
        out += name;
        out += "_std";
    }
    out += '\n';
    for (std::size_t t = 0; t < mean.size(); ++t) {
        out += std::to_string(t);
        for (const double v : mean[t]) {
            out += ',';
            out += format_double(v);
        }
        for (const double v : stddev[t]) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::string frame_csv(const std::vector<std::string>& species, const SpatialState& state) {
    std::string out = "id,species,x,y\n";
    for (const auto& p : state.particles) {
        out += std::to_string(p.id);
        out += ',';
        out += species[p.state];
        out += ',';
        out += format_fixed(p.x, 6);
        out += ',';
        out += format_fixed(p.y, 6);
        out += '\n';
    }
    return out;
}

}  // namespace massaction
