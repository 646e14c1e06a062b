#pragma once

#include <stdexcept>
#include <string>

namespace fiqa {

// Bad argument values (dimensions, empty lists, size mismatches).
class argument_error : public std::invalid_argument {
public:
    explicit argument_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Inputs for which the statistic is undefined (zero variance, all-zero vector).
class degenerate_input_error : public std::runtime_error {
public:
    explicit degenerate_input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// No crop size satisfies the non-negativity requirement.
class no_threshold_error : public std::runtime_error {
public:
    explicit no_threshold_error(const std::string& msg) : std::runtime_error(msg) {}
};

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Score/label id sets do not line up.
class alignment_error : public std::runtime_error {
public:
    explicit alignment_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fiqa
