#include "massaction/automaton.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cfloat>
#include <cmath>

#include "massaction/errors.hpp"
#include "massaction/io.hpp"
#include "text.hpp"

namespace massaction {

using detail::Line;
using detail::significant_lines;
using detail::tokens_of;

namespace {

bool valid_species_name(std::string_view name) {
    if (name.empty()) {
        return false;
    }
    const auto alpha = [](unsigned char c) { return std::isalpha(c) != 0 || c == '_'; };
    const auto alnum = [](unsigned char c) { return std::isalnum(c) != 0 || c == '_'; };
    if (!alpha(static_cast<unsigned char>(name.front()))) {
        return false;
    }
    return std::all_of(name.begin() + 1, name.end(),
                       [&](char c) { return alnum(static_cast<unsigned char>(c)); });
}

double checked_row_sum(const std::vector<double>& row, const std::string& label) {
    double sum = 0.0;
    for (const double v : row) {
        if (v < 0.0) {
            throw NegativeEntryError(label, v);
        }
        sum += v;
    }
    if (!(std::fabs(sum - 1.0) <= kRowSumTolerance)) {
        throw NonStochasticRowError(label, sum);
    }
    return sum;
}

// Rows already stochastic to within float noise are kept verbatim, which
// makes validation idempotent and lets serialize/parse round-trip bit-exactly.
void append_normalized(std::vector<double>& dst, const std::vector<double>& row, double sum) {
    const double band = 16.0 * static_cast<double>(row.size()) * DBL_EPSILON;
    if (std::fabs(sum - 1.0) <= band) {
        dst.insert(dst.end(), row.begin(), row.end());
        return;
    }
    for (const double v : row) {
        dst.push_back(v / sum);
    }
}

std::size_t sample_row(std::span<const double> row, double u) {
    std::size_t last = 0;
    for (std::size_t k = row.size(); k-- > 0;) {
        if (row[k] > 0.0) {
            last = k;
            break;
        }
    }
    double cum = 0.0;
    for (std::size_t k = 0; k < last; ++k) {
        cum += row[k];
        if (u < cum) {
            return k;
        }
    }
    return last;
}

}  // namespace

ParticleAutomaton ParticleAutomaton::validate(std::vector<std::string> species,
                                              std::vector<std::vector<double>> solitary,
                                              std::vector<std::vector<std::vector<double>>> binary) {
    if (species.empty()) {
        throw EmptySpeciesError("species list is empty");
    }
    for (const auto& name : species) {
        if (!valid_species_name(name)) {
            throw SpeciesNameError("invalid species name: '" + name + "'");
        }
    }
    for (std::size_t i = 0; i < species.size(); ++i) {
        for (std::size_t j = i + 1; j < species.size(); ++j) {
            if (species[i] == species[j]) {
                throw DuplicateSpeciesError(species[i]);
            }
        }
    }

    const std::size_t n = species.size();
    const auto expect = [n](std::size_t got, const std::string& what) {
        if (got != n) {
            throw DimensionMismatchError(what + " has " + std::to_string(got) +
                                         " entries, expected " + std::to_string(n));
        }
    };

    expect(solitary.size(), "solitary table");
    expect(binary.size(), "binary table");

    ParticleAutomaton a;
    a.solitary_.reserve(n * n);
    a.binary_.reserve(n * n * n);

    for (std::size_t q = 0; q < n; ++q) {
        const std::string label = "solitary row " + species[q];
        expect(solitary[q].size(), label);
        append_normalized(a.solitary_, solitary[q], checked_row_sum(solitary[q], label));
    }
    for (std::size_t q = 0; q < n; ++q) {
        expect(binary[q].size(), "binary table of " + species[q]);
        for (std::size_t b = 0; b < n; ++b) {
            const std::string label = "binary row (" + species[q] + " | " + species[b] + ")";
            expect(binary[q][b].size(), label);
            append_normalized(a.binary_, binary[q][b], checked_row_sum(binary[q][b], label));
        }
    }
    a.species_ = std::move(species);
    return a;
}

std::optional<std::size_t> ParticleAutomaton::species_index(std::string_view name) const {
    for (std::size_t i = 0; i < species_.size(); ++i) {
        if (species_[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::size_t ParticleAutomaton::sample(std::size_t from, std::optional<std::size_t> input,
                                      double u) const {
    return input ? sample_binary(from, *input, u) : sample_solitary(from, u);
}

std::size_t ParticleAutomaton::sample_solitary(std::size_t from, double u) const {
    assert(from < species_.size());
    return sample_row(solitary_row(from), u);
}

std::size_t ParticleAutomaton::sample_binary(std::size_t from, std::size_t input, double u) const {
    assert(from < species_.size() && input < species_.size());
    return sample_row(binary_row(from, input), u);
}

CausalProductCheck check_causal_product(const std::vector<std::vector<double>>& joint,
                                        double tolerance) {
    if (joint.empty() || joint.front().empty()) {
        throw DimensionMismatchError("joint outcome table is empty");
    }
    const std::size_t rows = joint.size();
    const std::size_t cols = joint.front().size();
    double total = 0.0;
    for (const auto& row : joint) {
        if (row.size() != cols) {
            throw DimensionMismatchError("joint outcome table is not rectangular");
        }
        for (const double v : row) {
            if (v < 0.0) {
                throw NegativeEntryError("joint outcome table", v);
            }
            total += v;
        }
    }
    if (!(std::fabs(total - 1.0) <= tolerance)) {
        throw NonStochasticJointError(total);
    }

    std::vector<double> row_marginal(rows, 0.0);
    std::vector<double> col_marginal(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            row_marginal[i] += joint[i][j];
            col_marginal[j] += joint[i][j];
        }
    }

    double worst = 0.0;
    std::size_t wi = 0;
    std::size_t wj = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double dev = std::fabs(joint[i][j] - row_marginal[i] * col_marginal[j]);
            if (dev > worst) {
                worst = dev;
                wi = i;
                wj = j;
            }
        }
    }
    if (worst > tolerance) {
        return {false, "entry (" + std::to_string(wi) + ", " + std::to_string(wj) + "): joint " +
                           format_double(joint[wi][wj]) + ", product of marginals " +
                           format_double(row_marginal[wi] * col_marginal[wj])};
    }
    return {true, {}};
}

namespace {

std::vector<double> parse_row(const Line& line, std::size_t n) {
    const auto tokens = tokens_of(line.text);
    if (tokens.size() != n) {
        throw SyntaxError(line.number, "expected " + std::to_string(n) + " entries, got " +
                                          std::to_string(tokens.size()));
    }
    std::vector<double> row;
    row.reserve(n);
    for (const auto tok : tokens) {
        const auto v = parse_double(tok);
        if (!v) {
            throw SyntaxError(line.number, "invalid number '" + std::string(tok) + "'");
        }
        row.push_back(*v);
    }
    return row;
}

}  // namespace

ParticleAutomaton parse_automaton(std::string_view text) {
    const auto lines = significant_lines(text);
    if (lines.empty()) {
        throw SyntaxError(1, "expected 'species:' header");
    }

    std::size_t pos = 0;
    const auto head = tokens_of(lines[pos].text);
    if (head.empty() || head.front() != "species:") {
        throw SyntaxError(lines[pos].number, "expected 'species:' header");
    }
    std::vector<std::string> species(head.begin() + 1, head.end());
    if (species.empty()) {
        throw SyntaxError(lines[pos].number, "species list is empty");
    }
    ++pos;

    const std::size_t n = species.size();
    const auto index_of = [&](std::string_view name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < n; ++i) {
            if (species[i] == name) {
                return i;
            }
        }
        return std::nullopt;
    };

    const auto read_block = [&](std::vector<std::vector<double>>& rows) {
        for (std::size_t q = 0; q < n; ++q) {
            if (pos >= lines.size()) {
                throw SyntaxError(lines.back().number, "unexpected end of file inside a table block");
            }
            rows.push_back(parse_row(lines[pos], n));
            ++pos;
        }
    };

    std::vector<std::vector<double>> solitary;
    std::vector<std::vector<std::vector<double>>> binary(n);
    std::vector<bool> seen_binary(n, false);
    bool seen_solitary = false;

    while (pos < lines.size()) {
        const Line header = lines[pos];
        const auto tokens = tokens_of(header.text);
        if (tokens.size() == 1 && tokens[0] == "solitary:") {
            if (seen_solitary) {
                throw SyntaxError(header.number, "duplicate solitary block");
            }
            seen_solitary = true;
            ++pos;
            read_block(solitary);
        } else if (tokens.size() == 2 && tokens[0] == "binary" && tokens[1].ends_with(":")) {
            const std::string_view name = tokens[1].substr(0, tokens[1].size() - 1);
            const auto idx = index_of(name);
            if (!idx) {
                throw SyntaxError(header.number,
                                 "unknown species '" + std::string(name) + "' in binary header");
            }
            if (seen_binary[*idx]) {
                throw SyntaxError(header.number,
                                 "duplicate binary block for " + std::string(name));
            }
            seen_binary[*idx] = true;
            ++pos;
            std::vector<std::vector<double>> block;
            read_block(block);
            // Block for encountered state b: row q holds delta(q, b, .).
            binary[*idx] = std::move(block);
        } else {
            throw SyntaxError(header.number, "expected 'solitary:' or 'binary <species>:' header");
        }
    }

    const std::size_t last_line = lines.back().number;
    if (!seen_solitary) {
        throw SyntaxError(last_line, "missing solitary block");
    }
    for (std::size_t b = 0; b < n; ++b) {
        if (!seen_binary[b]) {
            throw SyntaxError(last_line, "missing binary block for " + species[b]);
        }
    }

    // Stored blocks are [input][from]; validate() wants [from][input].
    std::vector<std::vector<std::vector<double>>> by_from(n);
    for (std::size_t q = 0; q < n; ++q) {
        by_from[q].resize(n);
        for (std::size_t b = 0; b < n; ++b) {
            by_from[q][b] = std::move(binary[b][q]);
        }
    }
    return ParticleAutomaton::validate(std::move(species), std::move(solitary), std::move(by_from));
}

std::string serialize_automaton(const ParticleAutomaton& a) {
    const std::size_t n = a.species_count();
    std::string out = "species:";
    for (const auto& name : a.species()) {
        out += ' ';
        out += name;
    }
    out += "\nsolitary:\n";
    for (std::size_t q = 0; q < n; ++q) {
        const auto row = a.solitary_row(q);
        for (std::size_t k = 0; k < n; ++k) {
            if (k > 0) {
                out += ' ';
            }
            out += format_double(row[k]);
        }
        out += '\n';
    }
    for (std::size_t b = 0; b < n; ++b) {
        out += "binary ";
        out += a.species()[b];
        out += ":\n";
        for (std::size_t q = 0; q < n; ++q) {
            const auto row = a.binary_row(q, b);
            for (std::size_t k = 0; k < n; ++k) {
                if (k > 0) {
                    out += ' ';
                }
                out += format_double(row[k]);
            }
            out += '\n';
        }
    }
    return out;
}

}  // namespace massaction
