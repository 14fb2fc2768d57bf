#include "qtr/rank.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>

namespace qtr {

namespace {

int count_inert(const std::vector<TaggedPrime>& primes) {
    return static_cast<int>(std::count_if(primes.begin(), primes.end(), [](const TaggedPrime& p) {
        return p.type == SplittingType::Inert;
    }));
}

// Product of two +-1 symbols with a guard against 0 leaking in.
int sign_product(int a, int b) {
    if (a * b == 0) throw std::logic_error("character entry is not a unit symbol");
    return a * b;
}

int split_symbol(const Integer& prime, const Integer& ell) {
    return sign_product(quartic_symbol(prime, ell), quartic_symbol(ell, prime));
}

}  // namespace

int NShape::t1() const noexcept { return count_inert(plist); }
int NShape::s1() const noexcept { return count_inert(qlist); }

Integer NShape::n() const {
    Integer out = delta;
    for (const auto& p : plist) out *= p.prime;
    for (const auto& q : qlist) out *= q.prime;
    return out;
}

NShape n_shape(const FieldInput& input) {
    NShape shape;
    for (const auto& prime : input.primes()) {
        if (prime == 2) {
            shape.delta = 2;
            continue;
        }
        TaggedPrime tagged{prime, splitting_type(prime, input.ell())};
        if (mpz_fdiv_ui(prime.get_mpz_t(), 4) == 1) {
            shape.plist.push_back(std::move(tagged));
        } else {
            shape.qlist.push_back(std::move(tagged));
        }
    }
    return shape;
}

std::string shape_string(const NShape& shape) {
    std::string letters;
    std::string tags;
    auto append = [&](const std::vector<TaggedPrime>& primes, char letter) {
        for (const auto& p : primes) {
            if (!letters.empty()) letters += "·";
            letters += letter;
            if (!tags.empty()) tags += ',';
            tags += tag_letter(p.type);
        }
    };
    if (shape.delta == 2) letters = "2";
    append(shape.plist, 'p');
    append(shape.qlist, 'q');
    if (letters.empty()) return "1";
    if (tags.empty()) return letters;
    return letters + " [" + tags + "]";
}

std::string Column::label() const {
    switch (kind) {
        case ColumnKind::SqrtEll: return "sqrt(l)";
        case ColumnKind::Dyadic: return "(2)";
        case ColumnKind::InertP: return "p" + to_string(prime);
        case ColumnKind::SplitP: return "P" + to_string(prime);
        case ColumnKind::SplitPBar: return "P" + to_string(prime) + "'";
        case ColumnKind::InertQ: return "q" + to_string(prime);
        case ColumnKind::SplitQ: return "Q" + to_string(prime);
        case ColumnKind::SplitQBar: return "Q" + to_string(prime) + "'";
    }
    return "?";
}

RamProfile ram_profile(const NShape& shape) {
    RamProfile profile;
    profile.h = shape.h();
    profile.w = shape.w();
    profile.ram2 = !(shape.delta == 1 && shape.s() % 2 == 1);
    profile.mu = 1 + (profile.ram2 ? 1 : 0) + profile.h + profile.w;

    struct Odd {
        const TaggedPrime* prime;
        bool is_p;
    };
    std::vector<Odd> odd;
    for (const auto& p : shape.plist) odd.push_back({&p, true});
    for (const auto& q : shape.qlist) odd.push_back({&q, false});
    std::sort(odd.begin(), odd.end(), [](const Odd& x, const Odd& y) { return x.prime->prime < y.prime->prime; });

    profile.columns.push_back({ColumnKind::SqrtEll, 0});
    for (const auto& [tp, is_p] : odd) {
        if (tp->type == SplittingType::Split) {
            profile.columns.push_back({is_p ? ColumnKind::SplitP : ColumnKind::SplitQ, tp->prime});
            profile.columns.push_back({is_p ? ColumnKind::SplitPBar : ColumnKind::SplitQBar, tp->prime});
        } else {
            profile.columns.push_back({is_p ? ColumnKind::InertP : ColumnKind::InertQ, tp->prime});
        }
    }
    if (profile.ram2) profile.columns.push_back({ColumnKind::Dyadic, 0});
    return profile;
}

std::string_view to_string(UnitRow row) noexcept {
    switch (row) {
        case UnitRow::MinusOne: return "-1";
        case UnitRow::Epsilon: return "eps";
        case UnitRow::MinusEpsilon: return "-eps";
    }
    return "?";
}

int CharacterTable::row_product(UnitRow r) const {
    int product = 1;
    for (int entry : row(r)) product *= entry;
    return product;
}

CharacterTable character_table(const NShape& shape, const BaseField& base) {
    const Integer& ell = base.ell;
    CharacterTable table;
    table.columns = ram_profile(shape).columns;

    const int dyadic_eps = shape.s() % 2 == 0 ? -1 : 1;  // (-1)^(s+1)

    for (const auto& column : table.columns) {
        int minus_one = 0;
        int eps = 0;
        switch (column.kind) {
            case ColumnKind::SqrtEll:
                // eps = u/2 mod sqrt(ell), a square root of -1; a non-residue as ell = 5 mod 8
                minus_one = legendre(-1, ell);
                eps = legendre(2 * base.unit.u, ell);
                break;
            case ColumnKind::InertP:
            case ColumnKind::InertQ:
                minus_one = 1;
                eps = legendre(-1, column.prime);
                break;
            case ColumnKind::SplitP:
            case ColumnKind::SplitPBar:
                minus_one = legendre(-1, column.prime);
                eps = split_symbol(column.prime, ell);
                break;
            case ColumnKind::SplitQ:
                minus_one = legendre(-1, column.prime);
                eps = split_symbol(column.prime, ell);
                break;
            case ColumnKind::SplitQBar:
                minus_one = legendre(-1, column.prime);
                eps = -split_symbol(column.prime, ell);
                break;
            case ColumnKind::Dyadic:
                minus_one = 1;
                eps = dyadic_eps;
                break;
        }
        table.rows[0].push_back(minus_one);
        table.rows[1].push_back(eps);
        table.rows[2].push_back(sign_product(minus_one, eps));
    }
    return table;
}

int r_star(const CharacterTable& table) {
    int norms = 0;
    for (auto r : {UnitRow::MinusOne, UnitRow::Epsilon, UnitRow::MinusEpsilon}) {
        const auto& entries = table.row(r);
        if (std::all_of(entries.begin(), entries.end(), [](int e) { return e == 1; })) ++norms;
    }
    // Norm units form a subgroup of {1, -1, eps, -eps} mod squares; any two
    // nontrivial members generate all of it.
    if (norms == 0) return 0;
    return norms == 1 ? 1 : 2;
}

int r_star_from_shape(const NShape& shape) noexcept { return shape.s2() == 0 ? 1 : 0; }

RankResult rank_closed(const FieldInput& input) { return rank_closed(n_shape(input)); }

RankResult rank_closed(const NShape& shape) {
    const int t = shape.t(), s = shape.s();
    const int t1 = shape.t1(), t2 = shape.t2();
    const int s1 = shape.s1(), s2 = shape.s2();
    const int h = t1 + 2 * t2;
    const bool s_odd = s % 2 == 1;

    auto subcase = [](int inert, int split) -> const char* {
        if (split == 0) return "inert";
        if (inert == 0) return "split";
        return "mixed";
    };

    RankResult r;
    if (t == 0 && s == 0) {
        // n = 1 or 2: only sqrt(ell) and the dyadic prime ramify.
        r = {2, 1, 0, "base"};
    } else if (s == 0) {
        // Only primes = 1 (mod 4); every unit row but -1 fails.
        r.mu = t1 + 2 * t2 + 2;
        r.r_star = 1;
        if (t2 == 0) {
            r.rank = t;
        } else if (t1 == 0) {
            r.rank = 2 * t;
        } else {
            r.rank = t1 + 2 * t2;
        }
        r.case_tag = std::string("p/") + subcase(t1, t2);
    } else if (t == 0 && shape.delta == 1 && s_odd) {
        // n = q_1...q_s, s odd: 2 is unramified.
        r.mu = s1 + 2 * s2 + 1;
        if (s2 == 0) {
            r.r_star = 1;
            r.rank = s - 1;
        } else if (s1 == 0) {
            r.r_star = 0;
            r.rank = 2 * s - 2;
        } else {
            r.r_star = 0;
            r.rank = s1 + 2 * s2 - 2;
        }
        r.case_tag = std::string("q-odd/") + subcase(s1, s2);
    } else if (t == 0) {
        // delta * q_1...q_s with s even, or 2 * q_1...q_s with s odd.
        r.mu = s1 + 2 * s2 + 2;
        if (s2 == 0) {
            r.r_star = 1;
            r.rank = s;
        } else if (s1 == 0) {
            r.r_star = 0;
            r.rank = 2 * s - 1;
        } else {
            r.r_star = 0;
            r.rank = s1 + 2 * s2 - 1;
        }
        r.case_tag = std::string("q-even/") + subcase(s1, s2);
    } else if (shape.delta == 1 && s_odd) {
        r.mu = h + s1 + 2 * s2 + 1;
        if (s2 == 0) {
            r.r_star = 1;
            r.rank = h + s - 1;
        } else if (s1 == 0) {
            r.r_star = 0;
            r.rank = h + 2 * s - 2;
        } else {
            r.r_star = 0;
            r.rank = h + s1 + 2 * (s - s1) - 2;
        }
        r.case_tag = std::string("pq-odd/") + subcase(s1, s2);
    } else {
        r.mu = h + s1 + 2 * s2 + 2;
        if (s2 == 0) {
            r.r_star = 1;
            r.rank = h + s;
        } else if (s1 == 0) {
            r.r_star = 0;
            r.rank = h + 2 * s - 1;
        } else {
            r.r_star = 0;
            r.rank = h + s1 + 2 * (s - s1) - 1;
        }
        r.case_tag = std::string("pq-even/") + subcase(s1, s2);
    }

    if (r.rank != r.mu + r.r_star - 3 || r.rank < 0) {
        throw std::logic_error("rank_closed: inconsistent case " + r.case_tag);
    }
    return r;
}

RankResult rank_unified(const FieldInput& input) { return rank_unified(n_shape(input), input.base()); }

RankResult rank_unified(const NShape& shape, const BaseField& base) {
    RankResult r;
    r.mu = ram_profile(shape).mu;
    r.r_star = r_star(character_table(shape, base));
    r.rank = r.mu + r.r_star - 3;
    r.case_tag = "ambiguous-classes";
    return r;
}

std::string table_text(const CharacterTable& table) {
    std::vector<std::string> header{"unit"};
    for (const auto& c : table.columns) header.push_back(c.label());

    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = std::max<std::size_t>(header[i].size(), 4);

    std::ostringstream out;
    auto cell = [&](std::size_t i, const std::string& text) {
        out << text;
        if (i + 1 < header.size()) out << std::string(width[i] - text.size() + 2, ' ');
    };
    for (std::size_t i = 0; i < header.size(); ++i) cell(i, header[i]);
    out << '\n';
    for (auto r : {UnitRow::MinusOne, UnitRow::Epsilon, UnitRow::MinusEpsilon}) {
        cell(0, std::string(to_string(r)));
        const auto& entries = table.row(r);
        for (std::size_t i = 0; i < entries.size(); ++i) cell(i + 1, entries[i] > 0 ? "+" : "-");
        out << '\n';
    }
    return out.str();
}

std::string table_json(const CharacterTable& table) {
    nlohmann::ordered_json j;
    j["columns"] = nlohmann::ordered_json::array();
    for (const auto& c : table.columns) j["columns"].push_back(c.label());
    j["rows"] = nlohmann::ordered_json::object();
    for (auto r : {UnitRow::MinusOne, UnitRow::Epsilon, UnitRow::MinusEpsilon}) {
        j["rows"][std::string(to_string(r))] = table.row(r);
    }
    return j.dump();
}

}  // namespace qtr
