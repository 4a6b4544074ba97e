#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace topgraph {

/// Error categories; the CLI maps these to process exit codes
/// (usage -> 2, data -> 3, non-convergence -> 4, internal -> 1).
enum class ErrorKind { Usage, Data, NonConvergence, Internal };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_usage(const std::string& msg) { throw Error(ErrorKind::Usage, msg); }
[[noreturn]] inline void throw_data(const std::string& msg) { throw Error(ErrorKind::Data, msg); }
[[noreturn]] inline void throw_internal(const std::string& msg) { throw Error(ErrorKind::Internal, msg); }
[[noreturn]] inline void throw_non_convergence(const std::string& msg) {
    throw Error(ErrorKind::NonConvergence, msg);
}

/// Index tuple (i_1, ..., i_J) over the cross-graph grid.
using Tuple = std::vector<std::size_t>;

/// Product of dims, saturating at uint64 max instead of wrapping.
inline std::uint64_t checked_product(std::span<const std::size_t> dims) {
    std::uint64_t p = 1;
    for (std::size_t d : dims) {
        if (d != 0 && p > std::numeric_limits<std::uint64_t>::max() / d)
            return std::numeric_limits<std::uint64_t>::max();
        p *= static_cast<std::uint64_t>(d);
    }
    return p;
}

/// Row-major flat index of a tuple. This mapping is the single global
/// convention shared by tensors, archives, and the dense oracle.
inline std::uint64_t flat_index(std::span<const std::size_t> dims, std::span<const std::size_t> t) {
    std::uint64_t f = 0;
    for (std::size_t j = 0; j < dims.size(); ++j) f = f * dims[j] + t[j];
    return f;
}

inline void unflatten(std::span<const std::size_t> dims, std::uint64_t flat, std::span<std::size_t> out) {
    for (std::size_t j = dims.size(); j-- > 0;) {
        out[j] = static_cast<std::size_t>(flat % dims[j]);
        flat /= dims[j];
    }
}

inline Tuple unflatten(std::span<const std::size_t> dims, std::uint64_t flat) {
    Tuple t(dims.size());
    unflatten(dims, flat, t);
    return t;
}

}  // namespace topgraph
