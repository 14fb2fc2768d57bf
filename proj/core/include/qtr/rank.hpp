#pragma once

#include "qtr/quartic.hpp"

#include <array>
#include <string>
#include <vector>

namespace qtr {

struct TaggedPrime {
    Integer prime;
    SplittingType type = SplittingType::Inert;
};

/*
 * n = delta * prod(p_i) * prod(q_j), p_i = 1 and q_j = 3 (mod 4), each prime
 * tagged with its behaviour in k. t1/t2 and s1/s2 count inert/split primes.
 */
struct NShape {
    int delta = 1;
    std::vector<TaggedPrime> plist;
    std::vector<TaggedPrime> qlist;

    int t() const noexcept { return static_cast<int>(plist.size()); }
    int s() const noexcept { return static_cast<int>(qlist.size()); }
    int t1() const noexcept;
    int t2() const noexcept { return t() - t1(); }
    int s1() const noexcept;
    int s2() const noexcept { return s() - s1(); }
    /// Primes of k above the p_i.
    int h() const noexcept { return t1() + 2 * t2(); }
    /// Primes of k above the q_j.
    int w() const noexcept { return s1() + 2 * s2(); }
    Integer n() const;
};

NShape n_shape(const FieldInput& input);

/// Compact description such as "2·p·q [S,I]"; "1" for n = 1.
std::string shape_string(const NShape& shape);

enum class ColumnKind { SqrtEll, InertP, SplitP, SplitPBar, InertQ, SplitQ, SplitQBar, Dyadic };

/// A prime of k ramified in K. prime is 0 for SqrtEll and Dyadic.
struct Column {
    ColumnKind kind = ColumnKind::SqrtEll;
    Integer prime;

    std::string label() const;
};

/*
 * Primes of k that ramify in K. Both real embeddings of n*eps0*sqrt(ell)
 * are positive, so no infinite place ramifies and mu = 1 + ram2 + h + w.
 */
struct RamProfile {
    std::vector<Column> columns;
    int mu = 0;
    int h = 0;
    int w = 0;
    bool ram2 = false;
};

/// Columns: SqrtEll, odd primes ascending (unbarred before barred), Dyadic last.
RamProfile ram_profile(const NShape& shape);

enum class UnitRow { MinusOne = 0, Epsilon = 1, MinusEpsilon = 2 };

std::string_view to_string(UnitRow row) noexcept;

/*
 * Norm residue symbols (unit, d / prime) for the units -1, eps, -eps of k
 * against every ramified prime. A unit is a norm from K exactly when its
 * row is all +1.
 */
struct CharacterTable {
    std::vector<Column> columns;
    std::array<std::vector<int>, 3> rows;

    const std::vector<int>& row(UnitRow r) const { return rows[static_cast<std::size_t>(r)]; }
    int row_product(UnitRow r) const;
};

CharacterTable character_table(const NShape& shape, const BaseField& base);

/// From the table: which of -1, eps, -eps are norms, as a 2-adic index.
int r_star(const CharacterTable& table);

/// Shortcut valid in this family: r* = 1 iff no q_j splits in k.
int r_star_from_shape(const NShape& shape) noexcept;

/// rank = mu + r* - 3 (one fundamental unit, -1 in k).
struct RankResult {
    int mu = 0;
    int r_star = 0;
    int rank = 0;
    std::string case_tag;
};

/// Dispatches on the shape of n to the matching closed-form case.
RankResult rank_closed(const FieldInput& input);
RankResult rank_closed(const NShape& shape);

/// Ambiguous class count: mu from ram_profile, r* from the explicit table.
RankResult rank_unified(const FieldInput& input);
RankResult rank_unified(const NShape& shape, const BaseField& base);

std::string table_text(const CharacterTable& table);
std::string table_json(const CharacterTable& table);

}  // namespace qtr
