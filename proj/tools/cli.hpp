#pragma once

#include "qtr/classify.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtr::cli {

enum class Format { Text, Csv, Json };

/// Exit codes: 0 ok, 2 invalid input, 3 internal invariant violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitInternal = 3;

/// Raised when the two rank computations (or any other checked invariant) disagree.
class InternalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::optional<Format> parse_format(std::string_view name);

struct ScanRow {
    Integer n;
    int delta = 1;
    std::string shape;
    int mu = 0;
    int r_star = 0;
    int rank = 0;
    std::string case_tag;
    Integer conductor;
    /// Set only for n that fail validation (non-squarefree, not prime to ell).
    std::optional<std::string> skip_reason;
};

struct ScanOptions {
    Integer ell;
    std::uint64_t n_max = 0;
    std::optional<int> rank_filter;
    unsigned jobs = 1;
    bool include_skipped = false;
};

/*
 * Rows for n = 1..n_max in ascending order. Work is split into contiguous
 * blocks handed to `jobs` threads; each row lands in its own slot, so the
 * result does not depend on the schedule.
 */
std::vector<ScanRow> scan(const ScanOptions& options);

/// One row for a validated field; throws InternalError if the two paths disagree.
ScanRow make_row(const FieldInput& input);

void write_rows(std::ostream& out, const std::vector<ScanRow>& rows, Format format, bool include_skipped);

struct VerifyReport {
    std::uint64_t fields = 0;
    std::uint64_t skipped = 0;
    std::uint64_t cross_path_failures = 0;
    std::uint64_t hilbert_failures = 0;
    std::uint64_t conductor_failures = 0;
    std::uint64_t classify_failures = 0;
    std::uint64_t r_star_failures = 0;
    std::uint64_t round_trip_failures = 0;
    std::vector<std::string> offenders;

    std::uint64_t failures() const noexcept {
        return cross_path_failures + hilbert_failures + conductor_failures + classify_failures +
               r_star_failures + round_trip_failures;
    }
};

enum class Check { CrossPath, Hilbert, Conductor, Classify, RStar, RoundTrip };

struct CheckFailure {
    Check check;
    std::string message;
};

/// Every invariant check for one field; empty when all hold.
std::vector<CheckFailure> check_field(const FieldInput& input);

VerifyReport verify(const Integer& ell, std::uint64_t n_max, unsigned jobs);

/// Entry point for the `qtr` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qtr::cli
