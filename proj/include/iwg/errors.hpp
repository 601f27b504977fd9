#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace iwg {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text or configuration.
class ParseError : public Error {
public:
    using Error::Error;
};

// Non-manifold edge or inconsistent cell connectivity.
class TopologyError : public Error {
public:
    using Error::Error;
};

// A cell whose vertex loop is not counter-clockwise.
class OrientationError : public Error {
public:
    using Error::Error;
};

// The interface crosses the boundary of a cell more than twice.
class CutTopologyError : public Error {
public:
    CutTopologyError(std::size_t cell, int sign_changes)
        : Error("cell " + std::to_string(cell) + ": interface crosses the cell boundary " +
                std::to_string(sign_changes) + " times (expected at most 2)"),
          cell_(cell) {}

    std::size_t cell() const noexcept { return cell_; }

private:
    std::size_t cell_;
};

// Base for failures of the numerical pipeline (singular or indefinite
// systems, non-converging iterations).
class NumericalError : public Error {
public:
    using Error::Error;
};

class NotPositiveDefinite : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class MaxIterations : public NumericalError {
public:
    MaxIterations(int iterations, double residual)
        : NumericalError("iteration limit " + std::to_string(iterations) +
                         " reached, relative residual " + scientific(residual)),
          iterations_(iterations), residual_(residual) {}

    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    static std::string scientific(double v)
    {
        char buffer[32];
        std::snprintf(buffer, sizeof buffer, "%.3e", v);
        return buffer;
    }

    int iterations_;
    double residual_;
};

class SingularMatrix : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace iwg
