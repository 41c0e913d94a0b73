#include "massaction/scenario.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <numbers>

#include "massaction/errors.hpp"
#include "massaction/io.hpp"
#include "text.hpp"

namespace massaction {

using detail::Line;
using detail::significant_lines;
using detail::tokens_of;
using detail::trim;

std::string_view to_string(Model model) {
    switch (model) {
        case Model::kMean:
            return "mean";
        case Model::kSsa:
            return "ssa";
        case Model::kSpatial:
            return "spatial";
    }
    return "?";
}

std::optional<Model> model_from_string(std::string_view name) {
    if (name == "mean") {
        return Model::kMean;
    }
    if (name == "ssa") {
        return Model::kSsa;
    }
    if (name == "spatial") {
        return Model::kSpatial;
    }
    return std::nullopt;
}

std::uint64_t ScenarioConfig::total_population() const {
    std::uint64_t total = 0;
    for (const auto& p : placement) {
        total += p.count;
    }
    return total;
}

std::vector<std::uint64_t> ScenarioConfig::initial_counts() const {
    std::vector<std::uint64_t> counts;
    counts.reserve(placement.size());
    for (const auto& p : placement) {
        counts.push_back(p.count);
    }
    return counts;
}

Concentration ScenarioConfig::initial_concentration() const {
    const auto m = static_cast<double>(total_population());
    Concentration x;
    x.reserve(placement.size());
    for (const auto& p : placement) {
        x.push_back(static_cast<double>(p.count) / m);
    }
    return x;
}

double ScenarioConfig::effective_alpha() const {
    if (alpha) {
        return *alpha;
    }
    if (!arena) {
        throw MissingFieldError("alpha");
    }
    return alpha_from_geometry(arena->radius, arena->area(), total_population());
}

void validate_scenario(const ScenarioConfig& c) {
    assert(c.placement.size() == c.automaton.species_count());
    if (c.total_population() == 0) {
        throw InputError("population is empty");
    }
    if (c.replicates == 0) {
        throw InputError("replicates must be at least 1");
    }
    if (!(c.c_bin > 0.0) || !std::isfinite(c.c_bin)) {
        throw InputError("c_bin must be positive and finite");
    }
    if (c.alpha && !(*c.alpha >= 0.0 && *c.alpha <= 1.0)) {
        throw InputError("alpha must lie in [0, 1]");
    }

    if (c.arena) {
        const Arena& a = *c.arena;
        if (!(a.width > 0.0) || !(a.height > 0.0)) {
            throw InvalidGeometryError("arena sides must be positive");
        }
        if (!(a.radius > 0.0)) {
            throw InvalidGeometryError("reaction radius must be positive");
        }
        if (!(a.max_step >= 0.0)) {
            throw InvalidGeometryError("diffusion step bound must be non-negative");
        }
        if (std::numbers::pi * a.radius * a.radius > a.area()) {
            throw InvalidGeometryError("reaction disc area exceeds arena area");
        }
    } else {
        if (c.model == Model::kSpatial) {
            throw MissingFieldError("arena");
        }
        if (!c.alpha) {
            throw MissingFieldError("alpha");
        }
    }

    for (std::size_t q = 0; q < c.placement.size(); ++q) {
        const auto& region = c.placement[q].region;
        if (!region) {
            continue;
        }
        if (!c.arena) {
            throw MissingFieldError("arena");
        }
        const bool inside = region->x0 >= 0.0 && region->x0 < region->x1 &&
                            region->x1 <= c.arena->width && region->y0 >= 0.0 &&
                            region->y0 < region->y1 && region->y1 <= c.arena->height;
        if (!inside) {
            throw RegionOutOfBoundsError("region of species " + c.automaton.species()[q] +
                                         " is not a non-empty box inside the arena");
        }
    }
}

namespace {

struct RawSection {
    std::size_t header_line = 0;
    std::vector<Line> lines;
};

std::map<std::string, RawSection, std::less<>> split_sections(const std::vector<Line>& lines) {
    std::map<std::string, RawSection, std::less<>> sections;
    std::string current;
    for (const Line& line : lines) {
        if (line.text.front() == '[') {
            if (!line.text.ends_with(']')) {
                throw SyntaxError(line.number, "malformed section header");
            }
            const std::string name(trim(line.text.substr(1, line.text.size() - 2)));
            if (name != "automaton" && name != "model" && name != "population" &&
                name != "arena" && name != "run") {
                throw SyntaxError(line.number, "unknown section [" + name + "]");
            }
            if (sections.contains(name)) {
                throw SyntaxError(line.number, "duplicate section [" + name + "]");
            }
            sections[name].header_line = line.number;
            current = name;
            continue;
        }
        if (current.empty()) {
            throw SyntaxError(line.number, "content before the first section header");
        }
        sections[current].lines.push_back(line);
    }
    return sections;
}

// "key = value" split; returns nullopt when the line has no '='.
struct KeyValue {
    std::string_view key;
    std::string_view value;
};

std::optional<KeyValue> key_value(std::string_view text) {
    const std::size_t eq = text.find('=');
    if (eq == std::string_view::npos) {
        return std::nullopt;
    }
    return KeyValue{trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

double parse_double_or_throw(const Line& line, std::string_view token) {
    const auto v = parse_double(token);
    if (!v) {
        throw SyntaxError(line.number, "invalid number '" + std::string(token) + "'");
    }
    return *v;
}

std::uint64_t parse_u64_or_throw(const Line& line, std::string_view token) {
    const auto v = parse_u64(token);
    if (!v) {
        throw SyntaxError(line.number, "invalid non-negative integer '" + std::string(token) + "'");
    }
    return *v;
}

ParticleAutomaton parse_automaton_section(const RawSection& section,
                                          const std::filesystem::path& base_dir) {
    if (section.lines.empty()) {
        throw SyntaxError(section.header_line, "[automaton] section is empty");
    }
    const auto first = key_value(section.lines.front().text);
    if (first && first->key == "path") {
        if (section.lines.size() > 1) {
            throw SyntaxError(section.lines[1].number, "unexpected content after automaton path");
        }
        std::filesystem::path file(std::string(first->value));
        if (file.is_relative() && !base_dir.empty()) {
            file = base_dir / file;
        }
        try {
            return parse_automaton(read_text_file(file));
        } catch (const SyntaxError& e) {
            throw SyntaxError(e.line(), "in " + file.string() + ": " + e.message());
        }
    }

    // Inline form: the section body is the automaton text itself.
    std::string text;
    std::vector<std::size_t> origin;
    for (const Line& line : section.lines) {
        text += line.text;
        text += '\n';
        origin.push_back(line.number);
    }
    try {
        return parse_automaton(text);
    } catch (const SyntaxError& e) {
        const std::size_t mapped =
            (e.line() >= 1 && e.line() <= origin.size()) ? origin[e.line() - 1] : section.header_line;
        throw SyntaxError(mapped, e.message());
    }
}

Region parse_region(const Line& line, std::string_view text) {
    std::vector<std::string_view> parts;
    while (true) {
        const std::size_t comma = text.find(',');
        parts.push_back(trim(text.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        text = text.substr(comma + 1);
    }
    if (parts.size() != 4) {
        throw SyntaxError(line.number, "region must be 'x0,y0,x1,y1'");
    }
    Region r;
    r.x0 = parse_double_or_throw(line, parts[0]);
    r.y0 = parse_double_or_throw(line, parts[1]);
    r.x1 = parse_double_or_throw(line, parts[2]);
    r.y1 = parse_double_or_throw(line, parts[3]);
    return r;
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
    const auto lines = significant_lines(text);
    if (lines.empty()) {
        throw SyntaxError(1, "scenario file is empty");
    }
    const auto sections = split_sections(lines);

    const auto require = [&](const char* name) -> const RawSection& {
        const auto it = sections.find(name);
        if (it == sections.end()) {
            throw MissingFieldError(name);
        }
        return it->second;
    };

    ScenarioConfig config;
    config.automaton = parse_automaton_section(require("automaton"), base_dir);
    const std::size_t n = config.automaton.species_count();
    config.placement.assign(n, {});

    // [model]
    {
        const RawSection& section = require("model");
        bool seen = false;
        for (const Line& line : section.lines) {
            const auto kv = key_value(line.text);
            if (!kv) {
                throw SyntaxError(line.number, "expected 'key = value'");
            }
            if (kv->key != "type") {
                throw SyntaxError(line.number, "unknown key '" + std::string(kv->key) + "' in [model]");
            }
            const auto model = model_from_string(kv->value);
            if (!model) {
                throw SyntaxError(line.number, "unknown model '" + std::string(kv->value) +
                                                  "', expected mean, ssa or spatial");
            }
            config.model = *model;
            seen = true;
        }
        if (!seen) {
            throw MissingFieldError("model type");
        }
    }

    // [arena]
    if (const auto it = sections.find("arena"); it != sections.end()) {
        Arena arena;
        bool w = false;
        bool h = false;
        bool r = false;
        bool s = false;
        for (const Line& line : it->second.lines) {
            const auto kv = key_value(line.text);
            if (!kv) {
                throw SyntaxError(line.number, "expected 'key = value'");
            }
            const double v = parse_double_or_throw(line, kv->value);
            if (kv->key == "width") {
                arena.width = v;
                w = true;
            } else if (kv->key == "height") {
                arena.height = v;
                h = true;
            } else if (kv->key == "r") {
                arena.radius = v;
                r = true;
            } else if (kv->key == "s") {
                arena.max_step = v;
                s = true;
            } else {
                throw SyntaxError(line.number, "unknown key '" + std::string(kv->key) + "' in [arena]");
            }
        }
        if (!w) throw MissingFieldError("arena width");
        if (!h) throw MissingFieldError("arena height");
        if (!r) throw MissingFieldError("arena r");
        if (!s) throw MissingFieldError("arena s");
        config.arena = arena;
    }

    // [run]
    {
        const RawSection& section = require("run");
        bool seen_horizon = false;
        for (const Line& line : section.lines) {
            const auto kv = key_value(line.text);
            if (!kv) {
                throw SyntaxError(line.number, "expected 'key = value'");
            }
            if (kv->key == "T") {
                config.horizon = parse_u64_or_throw(line, kv->value);
                seen_horizon = true;
            } else if (kv->key == "seed") {
                config.seed = parse_u64_or_throw(line, kv->value);
            } else if (kv->key == "replicates") {
                config.replicates = parse_u64_or_throw(line, kv->value);
            } else if (kv->key == "alpha") {
                if (kv->value == "geometry") {
                    config.alpha = std::nullopt;
                } else {
                    config.alpha = parse_double_or_throw(line, kv->value);
                }
            } else if (kv->key == "c_bin") {
                config.c_bin = parse_double_or_throw(line, kv->value);
            } else {
                throw SyntaxError(line.number, "unknown key '" + std::string(kv->key) + "' in [run]");
            }
        }
        if (!seen_horizon) {
            throw MissingFieldError("T");
        }
    }

    // [population]
    {
        const RawSection& section = require("population");
        std::vector<bool> seen(n, false);
        for (const Line& line : section.lines) {
            const auto kv = key_value(line.text);
            if (!kv) {
                throw SyntaxError(line.number, "expected '<species> = <count> [@ x0,y0,x1,y1]'");
            }
            const auto idx = config.automaton.species_index(kv->key);
            if (!idx) {
                throw UnknownSpeciesError(std::string(kv->key));
            }
            if (seen[*idx]) {
                throw SyntaxError(line.number, "duplicate population entry for " + std::string(kv->key));
            }
            seen[*idx] = true;
            std::string_view value = kv->value;
            std::optional<Region> region;
            if (const std::size_t at = value.find('@'); at != std::string_view::npos) {
                region = parse_region(line, trim(value.substr(at + 1)));
                value = trim(value.substr(0, at));
            }
            config.placement[*idx] = {parse_u64_or_throw(line, value), region};
        }
    }

    validate_scenario(config);
    return config;
}

ScenarioConfig load_scenario(const std::filesystem::path& file) {
    return parse_scenario(read_text_file(file), file.parent_path());
}

std::string serialize_scenario(const ScenarioConfig& config) {
    std::string out = "[automaton]\n";
    out += serialize_automaton(config.automaton);

    out += "\n[model]\ntype = ";
    out += to_string(config.model);
    out += '\n';

    if (config.arena) {
        out += "\n[arena]\n";
        out += "width = " + format_double(config.arena->width) + '\n';
        out += "height = " + format_double(config.arena->height) + '\n';
        out += "r = " + format_double(config.arena->radius) + '\n';
        out += "s = " + format_double(config.arena->max_step) + '\n';
    }

    out += "\n[run]\n";
    out += "T = " + std::to_string(config.horizon) + '\n';
    out += "seed = " + std::to_string(config.seed) + '\n';
    out += "replicates = " + std::to_string(config.replicates) + '\n';
    out += "alpha = " + (config.alpha ? format_double(*config.alpha) : std::string("geometry")) + '\n';
    out += "c_bin = " + format_double(config.c_bin) + '\n';

    out += "\n[population]\n";
    for (std::size_t q = 0; q < config.placement.size(); ++q) {
        const auto& p = config.placement[q];
        if (p.count == 0 && !p.region) {
            continue;
        }
        out += config.automaton.species()[q] + " = " + std::to_string(p.count);
        if (p.region) {
            out += " @ " + format_double(p.region->x0) + ',' + format_double(p.region->y0) + ',' +
                   format_double(p.region->x1) + ',' + format_double(p.region->y1);
        }
        out += '\n';
    }
    return out;
}

SpatialState init_spatial(const ScenarioConfig& config, RngStream& rng) {
    if (!config.arena) {
        throw MissingFieldError("arena");
    }
    const Arena& arena = *config.arena;
    SpatialState s;
    s.particles.reserve(config.total_population());
    std::uint64_t id = 0;
    for (std::uint32_t q = 0; q < config.placement.size(); ++q) {
        const auto& p = config.placement[q];
        const double x0 = p.region ? p.region->x0 : 0.0;
        const double y0 = p.region ? p.region->y0 : 0.0;
        const double x1 = p.region ? p.region->x1 : arena.width;
        const double y1 = p.region ? p.region->y1 : arena.height;
        for (std::uint64_t c = 0; c < p.count; ++c) {
            const double x = wrap_coordinate(x0 + rng.u01() * (x1 - x0), arena.width);
            const double y = wrap_coordinate(y0 + rng.u01() * (y1 - y0), arena.height);
            s.particles.push_back({id++, q, x, y});
        }
    }
    return s;
}

ScenarioConfig five_species_scenario(char variant) {
    if (variant != 'a' && variant != 'b' && variant != 'c') {
        throw InputError("unknown experiment variant; expected a, b or c");
    }

    const std::vector<std::string> species{"A", "B", "C", "D", "E"};
    const std::size_t n = species.size();
    const auto unit = [n](std::size_t q) {
        std::vector<double> row(n, 0.0);
        row[q] = 1.0;
        return row;
    };

    std::vector<std::vector<double>> solitary;
    for (std::size_t q = 0; q < n; ++q) {
        solitary.push_back(unit(q));
    }
    // B survives a round alone only half the time; otherwise it turns into D.
    solitary[1] = {0.0, 0.5, 0.0, 0.5, 0.0};

    std::vector<std::vector<std::vector<double>>> binary(n);
    for (std::size_t q = 0; q < n; ++q) {
        binary[q].assign(n, unit(q));
    }
    binary[0][1] = unit(2);  // A meets B -> C
    binary[3][2] = unit(4);  // D meets C -> E

    ScenarioConfig config;
    config.automaton = ParticleAutomaton::validate(species, std::move(solitary), std::move(binary));
    config.model = Model::kSpatial;
    config.arena = Arena{20.0, 20.0, 0.3, 0.3};
    config.horizon = 500;
    config.seed = 1;
    config.replicates = 20;
    config.alpha = std::nullopt;
    config.c_bin = kDefaultBinaryWeight;

    config.placement.assign(n, {});
    config.placement[0].count = 50;    // A
    config.placement[1].count = 50;    // B
    config.placement[3].count = 1000;  // D

    const Region center{9.5, 9.5, 10.5, 10.5};
    if (variant == 'b') {
        config.placement[0].region = center;
        config.placement[1].region = center;
    } else if (variant == 'c') {
        config.placement[0].region = Region{2.5, 2.5, 3.5, 3.5};
        config.placement[1].region = Region{16.5, 16.5, 17.5, 17.5};
    }

    validate_scenario(config);
    return config;
}

}  // namespace massaction
