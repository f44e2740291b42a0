#pragma once

#include <stdexcept>
#include <string>

namespace ramf {

// Violated mathematical precondition (bad weights, out-of-domain argument, ...).
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Evaluation requested at (or numerically too close to) a pole of the target function.
class pole_error : public std::domain_error {
public:
    explicit pole_error(const std::string& what) : std::domain_error(what) {}
};

// A series or expansion does not carry enough terms for the requested operation.
class truncation_error : public std::runtime_error {
public:
    explicit truncation_error(const std::string& what) : std::runtime_error(what) {}
};

// An iterative scheme failed to meet its tolerance; carries the bound it did achieve.
class numeric_failure : public std::runtime_error {
public:
    numeric_failure(const std::string& what, double achieved_log2_bound)
        : std::runtime_error(what), achieved_log2_bound(achieved_log2_bound) {}
    // log2 of the best error bound reached before giving up
    double achieved_log2_bound;
};

// An exact certification (rationality, eigenclass membership, ...) failed: the data
// is inconsistent with the claimed structure, as opposed to merely underresolved.
class certification_error : public std::runtime_error {
public:
    explicit certification_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ramf
