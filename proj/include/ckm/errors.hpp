#pragma once

#include <stdexcept>
#include <string>

namespace ckm {

struct SpaceMismatch : std::invalid_argument {
    explicit SpaceMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct DivisionByNonMonomial : std::domain_error {
    explicit DivisionByNonMonomial(const std::string& what) : std::domain_error(what) {}
};

struct UnboundGenerator : std::invalid_argument {
    explicit UnboundGenerator(const std::string& what) : std::invalid_argument(what) {}
};

struct BudgetExhausted : std::runtime_error {
    explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct NotIrreducible : std::invalid_argument {
    explicit NotIrreducible(const std::string& what) : std::invalid_argument(what) {}
};

struct NotARefinement : std::invalid_argument {
    explicit NotARefinement(const std::string& what) : std::invalid_argument(what) {}
};

struct NotASerrePair : std::invalid_argument {
    explicit NotASerrePair(const std::string& what) : std::invalid_argument(what) {}
};

struct MixedBorel : std::invalid_argument {
    explicit MixedBorel(const std::string& what) : std::invalid_argument(what) {}
};

struct GramSingular : std::runtime_error {
    explicit GramSingular(const std::string& what) : std::runtime_error(what) {}
};

struct AntipodeRecursionFailure : std::runtime_error {
    explicit AntipodeRecursionFailure(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::invalid_argument {
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

struct ResourceLimit : std::runtime_error {
    explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ckm
