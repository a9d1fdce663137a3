#pragma once

#include <stdexcept>
#include <string>

namespace timebin {

/// Malformed input text: unknown key, bad number, missing section.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structurally valid configuration whose values violate a model invariant.
class invariant_error : public std::runtime_error {
public:
    explicit invariant_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A computation with no usable answer (singular fit, unattainable target).
class degenerate_error : public std::runtime_error {
public:
    explicit degenerate_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace timebin
