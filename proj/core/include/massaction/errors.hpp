#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace massaction {

// Root of all library errors. InputError maps to CLI exit code 2,
// SimulationError to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
    using Error::Error;
};

class SimulationError : public Error {
public:
    using Error::Error;
};

// --- automaton construction -------------------------------------------------

class EmptySpeciesError : public InputError {
public:
    using InputError::InputError;
};

class SpeciesNameError : public InputError {
public:
    using InputError::InputError;
};

class DuplicateSpeciesError : public InputError {
public:
    explicit DuplicateSpeciesError(std::string species)
        : InputError("duplicate species name: " + species), species_(std::move(species)) {}
    const std::string& species() const { return species_; }

private:
    std::string species_;
};

class NegativeEntryError : public InputError {
public:
    NegativeEntryError(std::string row, double value)
        : InputError("negative probability " + std::to_string(value) + " in " + row),
          row_(std::move(row)), value_(value) {}
    const std::string& row() const { return row_; }
    double value() const { return value_; }

private:
    std::string row_;
    double value_;
};

class NonStochasticRowError : public InputError {
public:
    NonStochasticRowError(std::string row, double sum)
        : InputError(row + " sums to " + std::to_string(sum) + ", expected 1"),
          row_(std::move(row)), sum_(sum) {}
    const std::string& row() const { return row_; }
    double sum() const { return sum_; }

private:
    std::string row_;
    double sum_;
};

class NonStochasticJointError : public InputError {
public:
    explicit NonStochasticJointError(double sum)
        : InputError("joint outcome table sums to " + std::to_string(sum) + ", expected 1"),
          sum_(sum) {}
    double sum() const { return sum_; }

private:
    double sum_;
};

class DimensionMismatchError : public InputError {
public:
    using InputError::InputError;
};

// --- text formats ------------------------------------------------------------

class SyntaxError : public InputError {
public:
    SyntaxError(std::size_t line, std::string message)
        : InputError("line " + std::to_string(line) + ": " + message),
          line_(line), message_(std::move(message)) {}
    std::size_t line() const { return line_; }
    const std::string& message() const { return message_; }

private:
    std::size_t line_;
    std::string message_;
};

// --- scenario validation ------------------------------------------------------

class UnknownSpeciesError : public InputError {
public:
    explicit UnknownSpeciesError(std::string species)
        : InputError("unknown species: " + species), species_(std::move(species)) {}
    const std::string& species() const { return species_; }

private:
    std::string species_;
};

class RegionOutOfBoundsError : public InputError {
public:
    using InputError::InputError;
};

class MissingFieldError : public InputError {
public:
    explicit MissingFieldError(std::string field)
        : InputError("missing field: " + field), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class InvalidGeometryError : public InputError {
public:
    using InputError::InputError;
};

// --- simulation ---------------------------------------------------------------

// Raised when a mean-field update drives a component below the float-noise
// clamp band, i.e. the (c_bin, alpha, automaton) combination exits the simplex.
class NegativeConcentrationError : public SimulationError {
public:
    NegativeConcentrationError(std::size_t species, double value)
        : SimulationError("concentration of species " + std::to_string(species) +
                          " went negative (" + std::to_string(value) + ")"),
          species_(species), value_(value) {}
    std::size_t species() const { return species_; }
    double value() const { return value_; }
    std::optional<std::size_t> step() const { return step_; }
    void set_step(std::size_t t) { step_ = t; }

private:
    std::size_t species_;
    double value_;
    std::optional<std::size_t> step_;
};

class NoConvergenceError : public SimulationError {
public:
    explicit NoConvergenceError(std::size_t max_iter)
        : SimulationError("no fixed point within " + std::to_string(max_iter) + " iterations"),
          max_iter_(max_iter) {}
    std::size_t max_iter() const { return max_iter_; }

private:
    std::size_t max_iter_;
};

}  // namespace massaction
