#include "qtr/classify.hpp"

namespace qtr {

namespace {

// Tag counts of an NShape, named the way the patterns read.
struct Counts {
    int delta, t, s, p_inert, p_split, q_inert, q_split;

    explicit Counts(const NShape& shape)
        : delta(shape.delta),
          t(shape.t()),
          s(shape.s()),
          p_inert(shape.t1()),
          p_split(shape.t2()),
          q_inert(shape.s1()),
          q_split(shape.s2()) {}

    bool odd() const { return delta == 1; }
    bool even() const { return delta == 2; }
};

ShapePattern make(std::string id, std::string description, int rank, std::function<bool(const Counts&)> pred) {
    return {std::move(id), std::move(description), rank,
            [pred = std::move(pred)](const NShape& shape) { return pred(Counts(shape)); }};
}

std::vector<ShapePattern> build_patterns() {
    using C = const Counts&;
    std::vector<ShapePattern> v;

    // odd 2-class number
    v.push_back(make("r0.1", "n = 1 or 2", 0, [](C c) { return c.t == 0 && c.s == 0; }));
    v.push_back(make("r0.2", "n = q", 0, [](C c) { return c.odd() && c.t == 0 && c.s == 1; }));

    // cyclic
    v.push_back(make("r1.1", "n = delta*p, p inert", 1,
                     [](C c) { return c.t == 1 && c.s == 0 && c.p_inert == 1; }));
    v.push_back(make("r1.2", "n = 2q", 1, [](C c) { return c.even() && c.t == 0 && c.s == 1; }));
    v.push_back(make("r1.3", "n = pq, p inert", 1,
                     [](C c) { return c.odd() && c.t == 1 && c.s == 1 && c.p_inert == 1; }));

    v.push_back(make("r2.1", "n = delta*p, p split", 2,
                     [](C c) { return c.t == 1 && c.s == 0 && c.p_split == 1; }));
    v.push_back(make("r2.2", "n = delta*p1*p2, both inert", 2,
                     [](C c) { return c.t == 2 && c.s == 0 && c.p_inert == 2; }));
    v.push_back(make("r2.3", "n = pq, p split", 2,
                     [](C c) { return c.odd() && c.t == 1 && c.s == 1 && c.p_split == 1; }));
    v.push_back(make("r2.4", "n = 2pq, p inert", 2,
                     [](C c) { return c.even() && c.t == 1 && c.s == 1 && c.p_inert == 1; }));
    v.push_back(make("r2.5", "n = p1*p2*q, both p inert", 2,
                     [](C c) { return c.odd() && c.t == 2 && c.s == 1 && c.p_inert == 2; }));
    v.push_back(make("r2.6", "n = delta*q1*q2, at least one q inert", 2,
                     [](C c) { return c.t == 0 && c.s == 2 && c.q_inert >= 1; }));
    v.push_back(make("r2.7", "n = q1*q2*q3, at most one q split", 2,
                     [](C c) { return c.odd() && c.t == 0 && c.s == 3 && c.q_split <= 1; }));

    v.push_back(make("r3.1", "n = delta*p1*p2, one split and one inert", 3,
                     [](C c) { return c.t == 2 && c.s == 0 && c.p_inert == 1; }));
    v.push_back(make("r3.2", "n = delta*p1*p2*p3, all inert", 3,
                     [](C c) { return c.t == 3 && c.s == 0 && c.p_inert == 3; }));
    v.push_back(make("r3.3", "n = 2pq, p split", 3,
                     [](C c) { return c.even() && c.t == 1 && c.s == 1 && c.p_split == 1; }));
    v.push_back(make("r3.4", "n = delta*q1*q2, both split", 3,
                     [](C c) { return c.t == 0 && c.s == 2 && c.q_split == 2; }));
    v.push_back(make("r3.5", "n = q1*q2*q3, exactly one q inert", 3,
                     [](C c) { return c.odd() && c.t == 0 && c.s == 3 && c.q_inert == 1; }));
    v.push_back(make("r3.6", "n = 2*q1*q2*q3, at most one q split", 3,
                     [](C c) { return c.even() && c.t == 0 && c.s == 3 && c.q_split <= 1; }));
    v.push_back(make("r3.7", "n = p1*p2*q, one p split and one inert", 3,
                     [](C c) { return c.odd() && c.t == 2 && c.s == 1 && c.p_inert == 1; }));
    v.push_back(make("r3.8", "n = 2*p1*p2*q, both p inert", 3,
                     [](C c) { return c.even() && c.t == 2 && c.s == 1 && c.p_inert == 2; }));
    v.push_back(make("r3.9", "n = delta*p*q1*q2, p inert, at least one q inert", 3,
                     [](C c) { return c.t == 1 && c.s == 2 && c.p_inert == 1 && c.q_inert >= 1; }));
    v.push_back(make("r3.10", "n = p*q1*q2*q3, p inert, at most one q split", 3, [](C c) {
        return c.odd() && c.t == 1 && c.s == 3 && c.p_inert == 1 && c.q_split <= 1;
    }));
    v.push_back(make("r3.11", "n = p1*p2*p3*q, all p inert", 3,
                     [](C c) { return c.odd() && c.t == 3 && c.s == 1 && c.p_inert == 3; }));
    return v;
}

}  // namespace

const std::vector<ShapePattern>& shape_patterns() {
    static const std::vector<ShapePattern> patterns = build_patterns();
    return patterns;
}

Classification classify_small_rank(const NShape& shape) {
    Classification out;
    for (const auto& pattern : shape_patterns()) {
        if (!pattern.matches(shape)) continue;
        if (out.pattern) {
            throw std::logic_error("shape " + shape_string(shape) + " matches both " + out.pattern->id +
                                   " and " + pattern.id);
        }
        out.pattern = &pattern;
        out.rank = pattern.rank;
    }
    return out;
}

Classification classify_small_rank(const FieldInput& input) { return classify_small_rank(n_shape(input)); }

std::vector<Integer> enumerate_rank(const Integer& ell, const Integer& n_max, int target) {
    auto base = make_base_field(ell);
    std::vector<Integer> out;
    for (Integer n = 1; n <= n_max; ++n) {
        NShape shape;
        try {
            shape = n_shape(validate(base, n));
        } catch (const InvalidField&) {
            continue;
        }
        bool hit;
        if (target <= 3) {
            auto c = classify_small_rank(shape);
            hit = c.rank == target;
        } else {
            hit = rank_closed(shape).rank == target;
        }
        if (hit) out.push_back(n);
    }
    return out;
}

}  // namespace qtr
