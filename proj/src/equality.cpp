#include "hcg/equality.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "hcg/errors.hpp"

namespace hcg {

namespace {

using Point = std::map<Param, CycloElem>;

std::optional<CycloElem> eval_monomial(long N, const Monomial& m, const Point& pt) {
    CycloElem acc = CycloElem::one(N);
    for (const auto& [p, e] : m.exps()) {
        const CycloElem& val = pt.at(p);
        if (val.is_zero() && e < 0) return std::nullopt;
        acc = acc * val.pow(e);
    }
    return acc;
}

// Draws parameter values num/den with 2 <= num, den <= 97, num != den,
// until every atom of `a` is nonzero and every coordinate value is finite
// and different from 0 and 1. Returns the point and the coordinate values.
struct SafePoint {
    Point point;
    std::vector<CycloElem> coords;
};

std::optional<SafePoint> draw_safe_point(const ParamCycle& a, std::mt19937_64& rng,
                                         int max_draws) {
    const long N = a.level;
    std::uniform_int_distribution<int> dist(2, 97);
    for (int attempt = 0; attempt < max_draws; ++attempt) {
        Point pt;
        bool degenerate = false;
        for (Param p : a.params) {
            int num = dist(rng), den = dist(rng);
            if (num == den) {
                degenerate = true;
                break;
            }
            Rat q(num, den);
            q.canonicalize();
            pt.emplace(p, CycloElem(N, q));
        }
        if (degenerate) continue;

        bool ok = true;
        for (const CoordFn& f : a.coords) {
            if (!f.is_fn()) { ok = false; break; }
            for (const auto& [atom, e] : f.factors()) {
                auto lv = eval_monomial(N, atom.lead, pt);
                auto tv = eval_monomial(N, atom.trail, pt);
                if (!lv || !tv || (*lv - atom.c * *tv).is_zero()) { ok = false; break; }
            }
            if (!ok) break;
        }
        if (!ok) continue;

        std::vector<CycloElem> vals;
        for (const CoordFn& f : a.coords) {
            auto ev = eval_coord(f, pt);
            if (!ev || ev->infinite || ev->value.is_zero() || ev->value.is_one()) {
                ok = false;
                break;
            }
            vals.push_back(ev->value);
        }
        if (!ok) continue;
        return SafePoint{std::move(pt), std::move(vals)};
    }
    return std::nullopt;
}

// Univariate polynomial over F, exponent -> coefficient, zero coeffs dropped.
using UniPoly = std::map<long, CycloElem>;

void uni_add(UniPoly& p, long e, const CycloElem& c) {
    auto it = p.find(e);
    if (it == p.end()) {
        if (!c.is_zero()) p.emplace(e, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) p.erase(it);
    }
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    for (const auto& [e1, c1] : a)
        for (const auto& [e2, c2] : b) uni_add(r, e1 + e2, c1 * c2);
    return r;
}

enum class SolveStatus { Assigned, NoInfo, Inconsistent, BadDraw };

// Attempt to solve coordinate == target for the single unknown p.
SolveStatus solve_linear(long N, const CoordFn& f, Param p, const CycloElem& target,
                         const Point& known, CycloElem& out) {
    // scalar from the known monomial part
    CycloElem scalar = f.unit();
    long p_mono_exp = 0;
    for (const auto& [q, e] : f.mono().exps()) {
        if (q == p) {
            p_mono_exp = e;
            continue;
        }
        const CycloElem& val = known.at(q);
        if (val.is_zero() && e < 0) return SolveStatus::BadDraw;
        scalar = scalar * val.pow(e);
    }
    UniPoly num{{std::max(p_mono_exp, 0L), scalar}};
    UniPoly den{{std::max(-p_mono_exp, 0L), target}};
    if (scalar.is_zero()) num.clear();

    for (const auto& [atom, e] : f.factors()) {
        // atom as a polynomial in p with known coefficients
        long al = atom.lead.exponent(p), at = atom.trail.exponent(p);
        auto lv = eval_monomial(N, atom.lead.without(p), known);
        auto tv = eval_monomial(N, atom.trail.without(p), known);
        if (!lv || !tv) return SolveStatus::BadDraw;
        UniPoly ap;
        uni_add(ap, al, *lv);
        uni_add(ap, at, -(atom.c * *tv));
        if (ap.empty()) return SolveStatus::BadDraw;  // atom vanished identically
        UniPoly& side = (e > 0) ? num : den;
        for (int k = 0; k < std::abs(e); ++k) side = uni_mul(side, ap);
    }

    // num(p) - den(p) = 0
    UniPoly eq = num;
    for (const auto& [e, c] : den) uni_add(eq, e, -c);
    if (eq.empty()) return SolveStatus::NoInfo;  // identity, no information
    long deg = eq.rbegin()->first;
    long low = eq.begin()->first;
    if (deg == low && deg > 0) {
        // c * p^deg = 0 with c != 0 forces p = 0
        out = CycloElem::zero(N);
        return SolveStatus::Assigned;
    }
    if (deg - low > 1 || deg == 0) {
        if (deg == 0 && low == 0) return SolveStatus::Inconsistent;  // nonzero constant
        return SolveStatus::NoInfo;                                  // not linear
    }
    // c1 * p^{low+1} + c0 * p^{low} = 0, generically p != 0: p = -c0/c1
    const CycloElem& c1 = eq.rbegin()->second;
    const CycloElem& c0 = eq.begin()->second;
    out = -(c0 / c1);
    return SolveStatus::Assigned;
}

enum class TrialOutcome { Match, Mismatch, BadDraw, Stalled };

TrialOutcome run_trial(const ParamCycle& a, const ParamCycle& b, std::mt19937_64& rng,
                       int max_draws) {
    auto sp = draw_safe_point(a, rng, max_draws);
    if (!sp) return TrialOutcome::BadDraw;
    const long N = b.level;

    Point solved;
    std::set<int> unsolved_ids;
    std::map<int, Param> by_id;
    for (Param p : b.params) {
        unsolved_ids.insert(p.id());
        by_id.emplace(p.id(), p);
    }

    bool progress = true;
    while (!unsolved_ids.empty() && progress) {
        progress = false;
        for (size_t j = 0; j < b.coords.size(); ++j) {
            const CoordFn& f = b.coords[j];
            if (!f.is_fn()) return TrialOutcome::Mismatch;
            std::vector<Param> unknowns;
            for (int id : unsolved_ids) {
                Param p = by_id.at(id);
                if (f.contains(p)) unknowns.push_back(p);
            }
            if (unknowns.size() != 1) continue;
            Param p = unknowns.front();
            CycloElem value;
            SolveStatus st = solve_linear(N, f, p, sp->coords[j], solved, value);
            switch (st) {
                case SolveStatus::Assigned:
                    solved.emplace(p, value);
                    unsolved_ids.erase(p.id());
                    progress = true;
                    break;
                case SolveStatus::Inconsistent:
                    return TrialOutcome::Mismatch;
                case SolveStatus::BadDraw:
                    return TrialOutcome::BadDraw;
                case SolveStatus::NoInfo:
                    break;
            }
        }
    }
    if (!unsolved_ids.empty()) return TrialOutcome::Stalled;

    // full verification of every coordinate of b at the solved point; an
    // infinite value against a finite target shows the point is not on b
    for (size_t j = 0; j < b.coords.size(); ++j) {
        auto ev = eval_coord(b.coords[j], solved);
        if (!ev) return TrialOutcome::BadDraw;  // 0 and oo collide, degenerate draw
        if (ev->infinite) return TrialOutcome::Mismatch;
        if (!(ev->value == sp->coords[j])) return TrialOutcome::Mismatch;
    }
    return TrialOutcome::Match;
}

}  // namespace

EqResult cycles_equal(const ParamCycle& a, const ParamCycle& b, const EqualityOptions& opt) {
    if (a.coords.size() != b.coords.size()) return EqResult::Unequal;
    if (a.params.size() != b.params.size()) return EqResult::Unequal;
    if (a.level != b.level) return EqResult::Unequal;
    if (cycle_key(a) == cycle_key(b)) return EqResult::Equal;

    std::mt19937_64 rng(opt.seed);
    int matches = 0;
    int stalls = 0;
    int attempts = 0;
    const int max_attempts = opt.trials * 4;
    while (matches < opt.trials && attempts < max_attempts) {
        ++attempts;
        switch (run_trial(a, b, rng, opt.max_draws)) {
            case TrialOutcome::Match:
                ++matches;
                break;
            case TrialOutcome::Mismatch:
                return EqResult::Unequal;
            case TrialOutcome::BadDraw:
                break;  // resample
            case TrialOutcome::Stalled:
                ++stalls;
                if (stalls >= 2) return EqResult::Undecidable;
                break;
        }
    }
    if (matches >= opt.trials) return EqResult::Equal;
    return EqResult::Undecidable;
}

SumReport sum_is_zero(const CycleSum& s, const EqualityOptions& opt) {
    SumReport report;
    bool undecidable = false;
    for (size_t i = 0; i < s.terms.size(); ++i) {
        const ParamCycle& t = s.terms[i];
        bool placed = false;
        for (SumClass& cls : report.classes) {
            const ParamCycle& rep = s.terms[cls.members.front()];
            EqResult eq = cycles_equal(rep, t, opt);
            if (eq == EqResult::Equal) {
                cls.members.push_back(i);
                cls.total += t.coeff;
                cls.total.canonicalize();
                placed = true;
                break;
            }
            if (eq == EqResult::Undecidable) {
                undecidable = true;
                report.notes.push_back("equality undecidable between terms " +
                                       std::to_string(cls.members.front() + 1) + " and " +
                                       std::to_string(i + 1));
            }
        }
        if (!placed) {
            SumClass cls;
            cls.members.push_back(i);
            cls.total = t.coeff;
            cls.representative = t.to_string();
            report.classes.push_back(std::move(cls));
        }
    }
    bool all_zero = true;
    for (const SumClass& cls : report.classes)
        if (cls.total != 0) all_zero = false;
    if (undecidable && !all_zero) report.verdict = ZeroResult::Undecidable;
    else if (all_zero) report.verdict = ZeroResult::Zero;
    else report.verdict = ZeroResult::Nonzero;
    return report;
}

VerificationReport verify_closed(const CycleSum& s, const EqualityOptions& opt) {
    VerificationReport rep;
    rep.input_terms = s.terms.size();
    // improper pieces are excluded from the cancellation sum and recorded
    CycleSum bd = boundary(s, &rep.diagnostics, ImproperPolicy::CollectAndDrop);
    rep.boundary_terms = bd.terms.size();
    rep.classes = sum_is_zero(bd, opt);
    rep.verdict = rep.classes.verdict;
    rep.pass = (rep.verdict == ZeroResult::Zero);
    for (const std::string& w : rep.diagnostics.improper_terms)
        rep.classes.notes.push_back("improper face piece excluded: " + w);
    return rep;
}

} // namespace hcg
