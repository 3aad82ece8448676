#ifndef QTB_ERROR_HPP
#define QTB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qtb {

enum class errc {
    ok = 0,
    invalid_argument,
    degenerate_energy,
    no_turning_points,
    wkb_assumption,
    overflow,
    numeric_failure,
    grid_mismatch,
    io_error,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, errc code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

} // namespace qtb

#endif
