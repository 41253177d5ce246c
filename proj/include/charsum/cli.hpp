/**
 * @file cli.hpp
 * @brief The `charsum` command-line front end.
 *
 * Every verb produces a Report: the parsed command, field metadata, a
 * verb-specific results payload, and a list of checks. Exit codes: 0 when
 * every check passes, 2 when any check fails, 1 for usage errors.
 */
#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "character.hpp"
#include "cyclotomic.hpp"
#include "ff_core.hpp"
#include "group_ring.hpp"
#include "parallel.hpp"
#include "repcount.hpp"
#include "shift_count.hpp"

namespace charsum::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailure = 2;

/// Usage errors (exit code 1).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Json to_json(const EisensteinInt& x) { return Json{{"a", x.a}, {"b", x.b}}; }
inline Json to_json(const ComplexApprox& x) { return Json{{"re", x.re}, {"im", x.im}}; }

/// Nonzero coefficients as {"index": coefficient}.
inline Json to_json(const GroupRingElement& e) {
    Json j = Json::object();
    for (std::uint32_t k = 0; k < e.coeffs().size(); ++k)
        if (e.coeffs()[k] != 0) j[std::to_string(k)] = e.coeffs()[k];
    return j;
}

inline Json to_json(const std::vector<Elem>& xs) {
    Json j = Json::array();
    for (Elem x : xs) j.push_back(x.index);
    return j;
}

struct Check {
    std::string name;
    Json expected;
    Json actual;
    bool pass = false;
};

/// Ordered list of named checks.
class Checks {
public:
    void add(std::string name, Json expected, Json actual) {
        const bool pass = expected == actual;
        items_.push_back({std::move(name), std::move(expected), std::move(actual), pass});
    }
    void add(std::string name, Json expected, Json actual, bool pass) {
        items_.push_back({std::move(name), std::move(expected), std::move(actual), pass});
    }
    const std::vector<Check>& items() const noexcept { return items_; }
    bool all_pass() const {
        for (const auto& c : items_)
            if (!c.pass) return false;
        return true;
    }

private:
    std::vector<Check> items_;
};

/// Names of every library operation the verify driver can invoke.
inline const std::vector<std::string>& registered_ops() {
    static const std::vector<std::string> ops = {
        "ff-core/find_irreducible",        "ff-core/build_field",
        "ff-core/dlog",                    "character/partition",
        "character/char_sum_moment",       "character/winterhof_counts",
        "cyclotomic/jacobi_cubic",         "cyclotomic/a_beta",
        "cyclotomic/gauss_sum",            "cyclotomic/jacobi_from_gauss",
        "repcount/brute_rep_count",        "repcount/closed_rep_count_quadratic",
        "repcount/closed_rep_count_cubic", "repcount/rep_count_zero",
        "repcount/perron_table",           "group-ring/gr_mul",
        "group-ring/characteristic_fn",    "group-ring/phi",
        "group-ring/quadratic_sigma",      "group-ring/cubic_sigma",
        "shift-count/shift_count",         "shift-count/max_shift_count",
        "shift-count/closed_form_max3",    "shift-count/verify_duality",
    };
    return ops;
}

/// Records which registered operations a verification run invoked.
class Coverage {
public:
    void hit(const std::string& op) { hits_.insert(op); }
    std::vector<std::string> missing() const {
        std::vector<std::string> out;
        for (const auto& op : registered_ops())
            if (!hits_.count(op)) out.push_back(op);
        return out;
    }

private:
    std::set<std::string> hits_;
};

// ---------------------------------------------------------------------------
// Check suites shared by the single-field verbs and `verify`.

namespace suites {

/// Reference power by polynomial multiplication, independent of the log tables.
inline Elem pow_poly(const FieldTable& f, Elem x, std::uint64_t e) {
    Elem r = f.one();
    while (e > 0) {
        if (e & 1u) r = f.mul_poly(r, x);
        x = f.mul_poly(x, x);
        e >>= 1;
    }
    return r;
}

inline void field(const FieldTable& f, Checks& out, Coverage& cov) {
    cov.hit("ff-core/dlog");
    const std::uint32_t q = f.q();
    // dlog is a bijection onto [0, q-2] and inverts exp
    std::vector<bool> seen(q, false);
    bool bijective = true;
    for (std::uint32_t h = 0; h + 1 < q; ++h) {
        const Elem x = f.exp(h);
        if (x.index == 0 || seen[x.index] || f.dlog(x) != h) bijective = false;
        if (x.index < q) seen[x.index] = true;
    }
    out.add("dlog_bijection", true, bijective);
    out.add("alpha_order", q - 1, [&] {
        std::uint64_t ord = 1;
        Elem y = f.alpha();
        while (y != f.one()) {
            y = f.mul_poly(y, f.alpha());
            ++ord;
        }
        return ord;
    }());

    std::mt19937_64 rng(0x5eedULL + q);
    std::uniform_int_distribution<std::uint32_t> any(0, q - 1);
    std::uniform_int_distribution<std::uint32_t> nonzero(1, q - 1);
    std::uint64_t hom_fail = 0, frob_fail = 0, axiom_fail = 0, table_fail = 0;
    for (int s = 0; s < 200; ++s) {
        const Elem x{nonzero(rng)}, y{nonzero(rng)};
        const Elem xy = f.mul_poly(x, y);
        if (f.dlog(xy) != (static_cast<std::uint64_t>(f.dlog(x)) + f.dlog(y)) % (q - 1)) ++hom_fail;
        if (f.mul(x, y) != xy) ++table_fail;
        const Elem a{any(rng)}, b{any(rng)}, c{any(rng)};
        if (pow_poly(f, f.add(a, b), f.p()) != f.add(pow_poly(f, a, f.p()), pow_poly(f, b, f.p()))) ++frob_fail;
        if (f.mul_poly(f.mul_poly(a, b), c) != f.mul_poly(a, f.mul_poly(b, c))) ++axiom_fail;
        if (f.mul_poly(a, f.add(b, c)) != f.add(f.mul_poly(a, b), f.mul_poly(a, c))) ++axiom_fail;
    }
    out.add("dlog_homomorphism", 0, hom_fail);
    out.add("mul_table_matches_polynomial", 0, table_fail);
    out.add("frobenius_additive", 0, frob_fail);
    out.add("field_axioms", 0, axiom_fail);
}

inline void partition(const CosetPartition& part, Checks& out, Coverage& cov) {
    cov.hit("character/partition");
    const FieldTable& f = part.field();
    const unsigned n = part.order();
    const std::uint64_t size = (f.q() - 1) / n;
    bool sizes = true;
    for (unsigned j = 0; j < n; ++j) sizes = sizes && part.coset(j).size() == size;
    out.add("coset_sizes_equal", true, sizes);

    // With the conjugate character, α^j coset 0 carries label -j.
    bool shifted = true;
    for (unsigned j = 0; j < n; ++j) {
        std::set<std::uint32_t> expect;
        for (Elem x : part.coset(0)) expect.insert(f.mul_poly(f.exp(j), x).index);
        std::set<std::uint32_t> got;
        for (Elem x : part.coset(part.conjugated() ? (n - j) % n : j)) got.insert(x.index);
        shifted = shifted && expect == got;
    }
    out.add("coset_alpha_j_coset0", true, shifted);

    std::mt19937_64 rng(0xc05e7ULL + f.q());
    std::uniform_int_distribution<std::uint32_t> nonzero(1, f.q() - 1);
    std::uint64_t mult_fail = 0;
    for (int s = 0; s < 500; ++s) {
        const Elem x{nonzero(rng)}, y{nonzero(rng)};
        if (part.label(f.mul_poly(x, y)) != (part.label(x) + part.label(y)) % n) ++mult_fail;
    }
    out.add("label_multiplicativity", 0, mult_fail);

    const unsigned expected_m1 = n == 2 ? (f.q() % 4 == 1 ? 0u : 1u) : 0u;
    out.add("chi_minus_one", expected_m1, part.minus_one_label());

    cov.hit("character/char_sum_moment");
    out.add("first_moment_zero", to_json(EisensteinInt{}), to_json(char_sum_moment(part, MomentMode::First)));
    std::uint64_t shift_fail = 0;
    for (std::uint32_t g = 1; g < f.q(); ++g)
        if (char_sum_moment(part, MomentMode::Shifted, Elem{g}) != EisensteinInt{-1}) ++shift_fail;
    out.add("shifted_moment_minus_one", 0, shift_fail);

    cov.hit("character/winterhof_counts");
    std::uint64_t chain_fail = 0;
    for (std::uint32_t xj = 1; xj < f.q(); ++xj) {
        const auto sigma = winterhof_counts(part, Elem{xj});
        bool ok = sigma[0] + 1 == size;
        for (unsigned i = 1; i < n; ++i) ok = ok && sigma[i] == size;
        if (!ok) ++chain_fail;
    }
    out.add("winterhof_chain", 0, chain_fail);
}

inline void sums(const CosetPartition& part, Checks& out, Coverage& cov) {
    const FieldTable& f = part.field();
    cov.hit("cyclotomic/gauss_sum");
    const ComplexApprox g = gauss_sum_numeric(part);
    const double rel = std::abs(g.abs2() - f.q()) / f.q();
    out.add("gauss_abs2_equals_q", "rel err < 1e-9", rel, rel < 1e-9);
    if (part.order() != 3) return;

    cov.hit("cyclotomic/jacobi_cubic");
    const EisensteinInt j = jacobi_cubic(part);
    out.add("jacobi_norm_equals_q", f.q(), j.norm());
    out.add("jacobi_plus_conj_rational", true, (j + j.conj()).is_rational());

    cov.hit("cyclotomic/a_beta");
    std::uint64_t a_fail = 0;
    for (std::uint32_t b = 1; b < f.q(); ++b)
        if (a_beta(part, Elem{b}) != part.chi_bar(Elem{b}) * j) ++a_fail;
    out.add("a_beta_equals_conj_chi_times_j", 0, a_fail);

    cov.hit("cyclotomic/jacobi_from_gauss");
    const ComplexApprox diff = jacobi_from_gauss(part) - embed(j);
    const double err = std::sqrt(diff.abs2());
    out.add("jacobi_from_gauss_matches", "abs err < 1e-6", err, err < 1e-6);

    if (f.p() == 2) {
        std::int64_t expect = 1;
        for (unsigned k = 0; k < f.m() / 2; ++k) expect *= -2;
        expect = -expect;
        out.add("jacobi_char2_closed_form", to_json(EisensteinInt{expect}), to_json(j));
        out.add("gauss_char2_exact", to_json(EisensteinInt{expect}), to_json(gauss_sum_exact(part)));
    }
}

inline void repcount(const CosetPartition& part, Checks& out, Coverage& cov) {
    const FieldTable& f = part.field();
    const unsigned n = part.order();
    cov.hit("repcount/brute_rep_count");
    cov.hit(n == 2 ? "repcount/closed_rep_count_quadratic" : "repcount/closed_rep_count_cubic");
    const RepSweep s = sweep_rep_counts(part);
    out.add("closed_form_equals_brute_force", 0, s.mismatches);
    if (s.first_failure) out.add("first_mismatch", "", *s.first_failure, false);
    out.add("class_invariance", true, s.class_invariant);
    out.add("symmetry", true, s.symmetric);
    out.add("row_sums_q_minus_2", true, s.row_sums);

    cov.hit("repcount/rep_count_zero");
    std::uint64_t zero_fail = 0;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (rep_count_zero(part, i, j) != brute_rep_count_zero(part, i, j)) ++zero_fail;
    out.add("zero_beta_matches_enumeration", 0, zero_fail);

    if (n == 3) {
        const CosetPartition conj(part.field_ptr(), CharacterOrder{3}, !part.conjugated());
        const EisensteinInt j0 = jacobi_cubic(part), j1 = jacobi_cubic(conj);
        std::uint64_t conj_fail = 0;
        for (std::uint32_t b = 1; b < f.q(); ++b)
            for (unsigned i = 0; i < 3; ++i)
                for (unsigned j = 0; j < 3; ++j)
                    if (closed_rep_count_cubic(part, Elem{b}, i, j, j0).count !=
                        closed_rep_count_cubic(conj, Elem{b}, (3 - i) % 3, (3 - j) % 3, j1).count)
                        ++conj_fail;
        out.add("conjugation_invariance", 0, conj_fail);
    }

    if (n == 2 && f.m() == 1) {
        cov.hit("repcount/perron_table");
        const PerronTable t = perron_table(f.p());
        const std::uint64_t fl = (f.p() + 1) / 4;
        out.add("perron_qr_as_two_qr", fl - 1, t.qr_as_two_qr);
        out.add("perron_qr_as_two_nonres", fl, t.qr_as_two_nonres);
        out.add("perron_nonres_as_two_nonres", fl - 1, t.nonres_as_two_nonres);
        out.add("perron_nonres_as_two_qr", fl, t.nonres_as_two_qr);
    }
}

inline void charpoly(const CosetPartition& part, Checks& out, Coverage& cov, Json* results = nullptr) {
    const FieldTable& f = part.field();
    const unsigned n = part.order();
    cov.hit("group-ring/phi");
    cov.hit("group-ring/characteristic_fn");
    cov.hit("group-ring/gr_mul");
    const GroupRingElement ph = phi(f);
    const AdditiveGroup g = AdditiveGroup::of(f);
    std::vector<GroupRingElement> roots;
    for (unsigned j = 0; j < n; ++j) roots.push_back(characteristic_fn(part, j));

    GroupRingElement total = GroupRingElement::scalar(g, 1);
    for (const auto& r : roots) total = total + r;
    out.add("partition_identity", true, total == ph);
    out.add("phi_scaling", true, ph * roots[0] == static_cast<std::int64_t>(part.coset(0).size()) * ph);

    if (n == 2) {
        cov.hit("group-ring/quadratic_sigma");
        const QuadraticSigma s = quadratic_sigma(part);
        out.add("sigma1_matches_sum", true, s.sigma1 == roots[0] + roots[1]);
        out.add("sigma2_matches_product", true, s.sigma2 == roots[0] * roots[1]);
        out.add("residual_root_0_zero", true, quadratic_residual(s, roots[0]).is_zero());
        out.add("residual_root_1_zero", true, quadratic_residual(s, roots[1]).is_zero());
        if (results) {
            (*results)["sigma1"] = to_json(s.sigma1);
            (*results)["sigma2"] = to_json(s.sigma2);
        }
    } else {
        cov.hit("group-ring/cubic_sigma");
        const EisensteinInt j = jacobi_cubic(part);
        const CubicSigma s = cubic_sigma(part, j);
        const auto& a = roots;
        out.add("sigma1_matches_sum", true, s.sigma1 == a[0] + a[1] + a[2]);
        out.add("sigma2_matches_pair_products", true, s.sigma2 == a[0] * a[1] + a[1] * a[2] + a[2] * a[0]);
        out.add("sigma3_matches_product", true, s.sigma3 == a[0] * a[1] * a[2]);
        for (unsigned k = 0; k < 3; ++k)
            out.add("residual_root_" + std::to_string(k) + "_zero", true, cubic_residual(s, a[k]).is_zero());
        if (results) {
            (*results)["jacobi"] = to_json(j);
            (*results)["sigma1"] = to_json(s.sigma1);
            (*results)["sigma2"] = to_json(s.sigma2);
            (*results)["sigma3"] = to_json(s.sigma3);
        }
    }
}

inline void shift(const CosetPartition& part, unsigned t, Checks& out, Coverage& cov, Json* results = nullptr) {
    const FieldTable& f = part.field();
    cov.hit("shift-count/max_shift_count");
    const ShiftMax sm = max_shift_count(part, t);
    cov.hit("shift-count/shift_count");
    out.add("witness_recount", sm.max_count, shift_count(part, sm.witness));
    // rescaling the witness into coset j keeps N
    std::uint64_t jfail = 0;
    for (unsigned j = 1; j < part.order(); ++j) {
        std::vector<Elem> moved;
        for (Elem e : sm.witness) moved.push_back(f.mul(f.exp(j), e));
        if (shift_count(part, moved) != sm.max_count) ++jfail;
    }
    out.add("j_independence", 0, jfail);
    std::uint64_t prev = f.q();
    bool monotone = true;
    for (std::size_t k = 1; k <= sm.witness.size(); ++k) {
        const std::uint64_t c = shift_count(part, {sm.witness.begin(), sm.witness.begin() + static_cast<std::ptrdiff_t>(k)});
        monotone = monotone && c <= prev;
        prev = c;
    }
    out.add("monotonicity", true, monotone);
    if (results) {
        (*results)["t"] = t;
        (*results)["max_N"] = sm.max_count;
        (*results)["witness"] = to_json(sm.witness);
    }
    if (t == 3 && (part.order() == 2 || f.p() == 2)) {
        cov.hit("shift-count/closed_form_max3");
        const std::uint64_t pred = closed_form_max3(f, part.order());
        out.add("closed_form_max3", pred, sm.max_count + 1);
        if (results) (*results)["closed_form_prediction"] = pred;
    }
}

inline void duality(const CosetPartition& part, Checks& out, Coverage& cov, Json* results = nullptr) {
    cov.hit("shift-count/verify_duality");
    const DualityReport d = verify_duality(part);
    out.add("duality_holds", d.max_r, d.max_n3 + 1, d.holds);
    if (d.closed_form_prediction) {
        cov.hit("shift-count/closed_form_max3");
        out.add("closed_form_matches_max_R", *d.closed_form_prediction, d.max_r);
    }
    if (results) {
        (*results)["max_R"] = d.max_r;
        (*results)["max_N3"] = d.max_n3;
        (*results)["holds"] = d.holds;
        (*results)["closed_form_prediction"] = d.closed_form_prediction ? Json(*d.closed_form_prediction) : Json(nullptr);
        (*results)["max_R_witness"] = {{"beta", d.max_r_witness.beta.index}, {"i", d.max_r_witness.i}, {"j", d.max_r_witness.j}};
        (*results)["max_N3_witness"] = to_json(d.max_n3_witness);
    }
}

}  // namespace suites

// ---------------------------------------------------------------------------

struct Options {
    std::string verb;
    std::string field;
    std::optional<unsigned> n;
    std::optional<std::uint64_t> beta;
    std::optional<unsigned> i;
    std::optional<unsigned> j;
    unsigned t = 3;
    std::optional<std::uint64_t> q_max;
    std::string scope = "all";
    bool csv = false;
    bool conjugate = false;
    unsigned threads = 0;
    bool timing = false;
};

inline const std::vector<std::string>& verbs() {
    static const std::vector<std::string> v = {"field-info", "partition", "repcount", "jacobi", "gauss",
                                               "charpoly",   "shift",     "duality",  "verify"};
    return v;
}

namespace detail {

inline Json field_json(const FieldTable& f) {
    return Json{{"p", f.p()}, {"m", f.m()}, {"q", f.q()}, {"modulus", f.modulus()}, {"alpha", f.alpha().index}};
}

inline Json command_json(const Options& o) {
    Json c{{"verb", o.verb}};
    if (!o.field.empty()) c["field"] = o.field;
    if (o.n) c["n"] = *o.n;
    if (o.beta) c["beta"] = *o.beta;
    if (o.i) c["i"] = *o.i;
    if (o.j) c["j"] = *o.j;
    if (o.verb == "shift") c["t"] = o.t;
    if (o.verb == "verify") {
        c["scope"] = o.scope;
        c["q_max"] = o.q_max.value_or(0);
    }
    if (o.conjugate) c["conjugate"] = true;
    return c;
}

inline unsigned default_order(const FieldTable& f, const Options& o, unsigned fallback_odd) {
    if (o.n) return *o.n;
    return f.p() == 2 ? 3u : fallback_odd;
}

inline Elem parse_beta(const FieldTable& f, std::uint64_t b) {
    if (b >= f.q()) throw UsageError("--beta " + std::to_string(b) + " is out of range for q = " + std::to_string(f.q()));
    return Elem{static_cast<std::uint32_t>(b)};
}

}  // namespace detail

/// Everything a verb writes: results payload plus checks.
struct Outcome {
    Json results = Json::object();
    Checks checks;
    std::string csv;
};

namespace verbs_impl {

inline void field_info(const std::shared_ptr<const FieldTable>& f, const Options&, Outcome& out) {
    Coverage cov;
    out.results["q"] = f->q();
    out.results["modulus_irreducible"] = poly::is_irreducible(f->modulus(), f->p());
    if (f->q() <= 256) {
        Json dl = Json::object();
        for (std::uint32_t x = 1; x < f->q(); ++x) dl[std::to_string(x)] = f->dlog(Elem{x});
        out.results["dlog"] = dl;
    }
    suites::field(*f, out.checks, cov);
}

inline void partition(const CosetPartition& part, const Options& o, Outcome& out) {
    Coverage cov;
    const FieldTable& f = part.field();
    out.results["n"] = part.order();
    out.results["coset_size"] = part.coset(0).size();
    if (f.q() <= 1024) {
        Json cs = Json::array();
        for (unsigned j = 0; j < part.order(); ++j) cs.push_back(to_json(part.coset(j)));
        out.results["cosets"] = cs;
    }
    out.results["minus_one_label"] = part.minus_one_label();
    out.results["first_moment"] = to_json(char_sum_moment(part, MomentMode::First));
    const Elem xj = o.beta ? detail::parse_beta(f, *o.beta) : f.one();
    if (xj.index != 0) {
        out.results["winterhof_x_j"] = xj.index;
        out.results["winterhof_counts"] = winterhof_counts(part, xj);
        out.results["shifted_moment"] = to_json(char_sum_moment(part, MomentMode::Shifted, xj));
    }
    suites::partition(part, out.checks, cov);
}

inline void repcount(const CosetPartition& part, const Options& o, Outcome& out) {
    Coverage cov;
    const FieldTable& f = part.field();
    const unsigned n = part.order();
    std::optional<EisensteinInt> jac;
    if (n == 3) {
        jac = jacobi_cubic(part);
        out.results["jacobi"] = to_json(*jac);
    }
    if (o.beta) {
        const Elem beta = detail::parse_beta(f, *o.beta);
        const unsigned i = o.i.value_or(0), j = o.j.value_or(0);
        if (i >= n || j >= n) throw UsageError("--i/--j must lie in [0, n)");
        const RepCountResult closed = rep_count(part, {beta, i, j}, CountMethod::ClosedForm, jac);
        const RepCountResult brute = rep_count(part, {beta, i, j}, CountMethod::BruteForce, jac);
        out.results["query"] = {{"beta", beta.index}, {"i", i}, {"j", j}};
        out.results["closed_form"] = closed.count;
        out.results["brute_force"] = brute.count;
        if (closed.k) out.results["K"] = to_json(*closed.k);
        out.checks.add("closed_form_equals_brute_force", brute.count, closed.count);
        return;
    }

    const ClassTable table = class_table(part);
    Json classes = Json::array();
    for (unsigned l = 0; l < n; ++l)
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j)
                classes.push_back({{"beta_label", l}, {"i", i}, {"j", j}, {"count", table.counts[l][i][j]}});
    out.results["class_table"] = classes;

    Json zero = Json::array();
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) zero.push_back({{"i", i}, {"j", j}, {"count", rep_count_zero(part, i, j)}});
    out.results["zero_beta"] = {
        {"table", zero},
        {"corrected_value", (f.q() - 1) / n},
        {"literal_value", (f.p() - 1) / n},
        {"literal_reading_differs", (f.q() - 1) / n != (f.p() - 1) / n},
    };

    if (n == 2 && f.m() == 1) {
        const PerronTable t = perron_table(f.p());
        out.results["perron"] = {{"qr_as_two_qr", t.qr_as_two_qr},
                                 {"qr_as_two_nonres", t.qr_as_two_nonres},
                                 {"qr_as_mixed", t.qr_as_mixed},
                                 {"nonres_as_two_qr", t.nonres_as_two_qr},
                                 {"nonres_as_two_nonres", t.nonres_as_two_nonres},
                                 {"nonres_as_mixed", t.nonres_as_mixed}};
    }
    suites::repcount(part, out.checks, cov);

    if (o.csv) {
        std::ostringstream os;
        os << "beta,beta_label,i,j,closed_form,brute_force\n";
        for (std::uint32_t b = 1; b < f.q(); ++b)
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = 0; j < n; ++j)
                    os << b << ',' << part.label(Elem{b}) << ',' << i << ',' << j << ','
                       << rep_count(part, {Elem{b}, i, j}, CountMethod::ClosedForm, jac).count << ','
                       << brute_rep_count(part, Elem{b}, i, j) << '\n';
        out.csv = os.str();
    }
}

inline void jacobi(const CosetPartition& part, const Options& o, Outcome& out) {
    Coverage cov;
    const FieldTable& f = part.field();
    if (part.order() != 3) throw UsageError("jacobi requires --n 3");
    const EisensteinInt j = jacobi_cubic(part);
    out.results["jacobi"] = to_json(j);
    out.results["norm"] = j.norm();
    out.results["jacobi_plus_conj"] = j.trace();
    out.results["jacobi_from_gauss"] = to_json(jacobi_from_gauss(part));
    out.results["jacobi_embedded"] = to_json(embed(j));
    if (o.beta) {
        const Elem b = detail::parse_beta(f, *o.beta);
        if (b.index == 0) throw UsageError("A(beta) requires --beta != 0");
        out.results["a_beta"] = to_json(a_beta(part, b));
    }
    suites::sums(part, out.checks, cov);
}

inline void gauss(const CosetPartition& part, const Options&, Outcome& out) {
    Coverage cov;
    out.results["numeric"] = to_json(gauss_sum_numeric(part));
    if (part.field().p() == 2) out.results["exact"] = to_json(gauss_sum_exact(part));
    const ComplexApprox g = gauss_sum_numeric(part);
    const double rel = std::abs(g.abs2() - part.field().q()) / part.field().q();
    out.checks.add("gauss_abs2_equals_q", "rel err < 1e-9", rel, rel < 1e-9);
    if (part.field().p() == 2 && part.order() == 3) {
        std::int64_t expect = 1;
        for (unsigned k = 0; k < part.field().m() / 2; ++k) expect *= -2;
        out.checks.add("gauss_char2_exact", to_json(EisensteinInt{-expect}), to_json(gauss_sum_exact(part)));
    }
}

inline void charpoly(const CosetPartition& part, const Options&, Outcome& out) {
    Coverage cov;
    suites::charpoly(part, out.checks, cov, &out.results);
}

inline void shift(const CosetPartition& part, const Options& o, Outcome& out) {
    Coverage cov;
    if (part.coset(0).size() < o.t) {
        out.checks.add("coset_large_enough", o.t, part.coset(0).size(), false);
        return;
    }
    suites::shift(part, o.t, out.checks, cov, &out.results);
}

inline void duality(const CosetPartition& part, const Options&, Outcome& out) {
    Coverage cov;
    if (part.coset(0).size() < 3) {
        out.checks.add("coset_large_enough", 3, part.coset(0).size(), false);
        return;
    }
    suites::duality(part, out.checks, cov, &out.results);
}

/// Runs every check of the scope over every prime power q <= q_max.
inline void verify(const Options& o, Outcome& out) {
    static const std::set<std::string> scopes = {"all", "repcount", "charpoly", "sums", "duality"};
    if (!scopes.count(o.scope)) throw UsageError("unknown scope '" + o.scope + "'");
    if (!o.q_max) throw UsageError("verify requires --q-max");
    const std::uint64_t q_max = *o.q_max;
    if (q_max > size_cap()) throw UsageError("--q-max exceeds the size cap " + std::to_string(size_cap()));
    const bool all = o.scope == "all";
    Coverage cov;

    std::uint64_t fields = 0, combos = 0, assertions = 0;
    Json failures = Json::array();
    auto absorb = [&](const FieldTable& f, unsigned n, const Checks& cs) {
        for (const auto& c : cs.items()) {
            ++assertions;
            if (!c.pass)
                failures.push_back({{"q", f.q()}, {"n", n}, {"check", c.name}, {"expected", c.expected}, {"actual", c.actual}});
        }
    };

    for (auto [p, m] : prime_powers_up_to(q_max)) {
        cov.hit("ff-core/find_irreducible");
        const Poly modulus = find_irreducible(p, m);
        cov.hit("ff-core/build_field");
        const auto f = build_field(FieldSpec{p, m, modulus});
        ++fields;
        if (all) {
            Checks cs;
            suites::field(*f, cs, cov);
            absorb(*f, 0, cs);
        }
        for (unsigned n : {2u, 3u}) {
            if (!character_exists(*f, n)) continue;
            const CosetPartition part(f, CharacterOrder{n}, o.conjugate);
            ++combos;
            Checks cs;
            try {
                if (all || o.scope == "sums") {
                    suites::partition(part, cs, cov);
                    suites::sums(part, cs, cov);
                }
                if (all || o.scope == "repcount") suites::repcount(part, cs, cov);
                if (all || o.scope == "charpoly") suites::charpoly(part, cs, cov);
                if ((all || o.scope == "duality") && part.coset(0).size() >= 3) {
                    suites::duality(part, cs, cov);
                    suites::shift(part, 3, cs, cov);
                }
            } catch (const TheoremViolation& e) {
                cs.add("theorem_violation", "none", e.what(), false);
            }
            absorb(*f, n, cs);
        }
    }

    out.results["scope"] = o.scope;
    out.results["q_max"] = q_max;
    out.results["fields_checked"] = fields;
    out.results["field_orders_checked"] = combos;
    out.results["assertions"] = assertions;
    out.results["failures"] = failures;
    out.checks.add("all_assertions_pass", 0, failures.size());
    if (all) {
        const auto missing = cov.missing();
        out.checks.add("coverage_all_ops", Json::array(), missing);
    }
}

}  // namespace verbs_impl

/**
 * Parses argv-style arguments (without the program name), runs the verb and
 * writes the report to `out`. Diagnostics go to `err`.
 */
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact character-sum and additive-decomposition computations over F_{p^m}", "charsum"};
    app.add_option("verb", o.verb, "one of: field-info partition repcount jacobi gauss charpoly shift duality verify")
        ->required()
        ->check(CLI::IsMember(verbs()));
    app.add_option("--field", o.field, "field spec: p, p^m or p^m:c0,...,cm");
    app.add_option("--n", o.n, "character order")->check(CLI::IsMember({2u, 3u}));
    app.add_option("--beta", o.beta, "field element index");
    app.add_option("--i", o.i, "coset of the second summand");
    app.add_option("--j", o.j, "coset of the first summand");
    app.add_option("--t", o.t, "subset size for shift counts")->check(CLI::PositiveNumber);
    app.add_option("--q-max", o.q_max, "largest q for verify");
    app.add_option("--scope", o.scope, "verify scope: all repcount charpoly sums duality");
    app.add_flag("--csv", o.csv, "CSV output (repcount)");
    app.add_flag("--conjugate", o.conjugate, "use the conjugate cubic character");
    app.add_option("--threads", o.threads, "worker threads (0 = all)");
    app.add_flag("--timing", o.timing, "include elapsed_ms in the report");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "charsum: " << e.what() << "\n";
        return kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    set_thread_count(o.threads);
    Json report;
    report["command"] = detail::command_json(o);
    Outcome outcome;
    try {
        if (o.csv && o.verb != "repcount") throw UsageError("--csv is only available for repcount");
        if (o.verb == "verify") {
            verbs_impl::verify(o, outcome);
        } else {
            if (o.field.empty()) throw UsageError(o.verb + " requires --field");
            std::shared_ptr<const FieldTable> f;
            try {
                f = build_field(parse_field_spec(o.field));
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
            report["field"] = detail::field_json(*f);
            if (o.verb == "field-info") {
                verbs_impl::field_info(f, o, outcome);
            } else {
                const unsigned fallback = (o.verb == "jacobi") ? 3u : 2u;
                const unsigned n = detail::default_order(*f, o, fallback);
                report["command"]["n"] = n;
                std::optional<CosetPartition> part;
                try {
                    part.emplace(f, CharacterOrder{n}, o.conjugate);
                } catch (const DomainError& e) {
                    outcome.checks.add("character_exists", true, false, false);
                    outcome.results["error"] = e.what();
                }
                if (part) {
                    try {
                        if (o.verb == "partition") verbs_impl::partition(*part, o, outcome);
                        else if (o.verb == "repcount") verbs_impl::repcount(*part, o, outcome);
                        else if (o.verb == "jacobi") verbs_impl::jacobi(*part, o, outcome);
                        else if (o.verb == "gauss") verbs_impl::gauss(*part, o, outcome);
                        else if (o.verb == "charpoly") verbs_impl::charpoly(*part, o, outcome);
                        else if (o.verb == "shift") verbs_impl::shift(*part, o, outcome);
                        else if (o.verb == "duality") verbs_impl::duality(*part, o, outcome);
                    } catch (const TheoremViolation& e) {
                        outcome.checks.add("theorem_violation", "none", e.what(), false);
                    }
                }
            }
        }
    } catch (const UsageError& e) {
        err << "charsum: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "charsum: " << e.what() << "\n";
        return kExitUsage;
    }

    report["results"] = outcome.results;
    Json checks = Json::array();
    for (const auto& c : outcome.checks.items())
        checks.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
    report["checks"] = checks;
    if (o.timing) {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        report["elapsed_ms"] = ms;
    }

    const bool pass = outcome.checks.all_pass();
    if (o.csv) {
        out << outcome.csv;
        for (const auto& c : outcome.checks.items())
            if (!c.pass) err << "charsum: check failed: " << c.name << "\n";
    } else {
        out << report.dump(2) << "\n";
    }
    return pass ? kExitPass : kExitCheckFailure;
}

}  // namespace charsum::cli
