#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace massaction {

struct SpatialState;

// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

// Fixed-point form with the given number of decimals.
std::string format_fixed(double v, int decimals);

// Locale-free parse of a full token; rejects trailing junk and non-finite
// values. An optional leading '+' is accepted.
std::optional<double> parse_double(std::string_view token);
std::optional<std::uint64_t> parse_u64(std::string_view token);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

std::uint64_t fnv1a64(std::string_view bytes);

// Header "t,<species...>"; rows[t] holds one value per species. Values are
// emitted in shortest round-trip form, so integral counts print as integers.
std::string trajectory_csv(const std::vector<std::string>& species,
                           const std::vector<std::vector<double>>& rows);

// Header "t,<sp>_mean...,<sp>_std..." with per-step ensemble statistics.
std::string ensemble_csv(const std::vector<std::string>& species,
                         const std::vector<std::vector<double>>& mean,
                         const std::vector<std::vector<double>>& stddev);

// Header "id,species,x,y"; one row per particle, coordinates with 6 decimals.
std::string frame_csv(const std::vector<std::string>& species, const SpatialState& state);

}  // namespace massaction
