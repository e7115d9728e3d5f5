#include "hcg/symcycle.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include "hcg/errors.hpp"

namespace hcg {

// ---------------------------------------------------------------------------
// Param
// ---------------------------------------------------------------------------

Param Param::t(int i) {
    if (i < 1 || i >= kU) throw DomainError("t-parameter index out of range");
    return Param(i);
}
Param Param::u() { return Param(kU); }
Param Param::v() { return Param(kV); }

Param Param::from_string(const std::string& name) {
    if (name == "u") return u();
    if (name == "v") return v();
    if (name.size() >= 2 && name[0] == 't') {
        int idx = std::stoi(name.substr(1));
        return t(idx);
    }
    throw ParseError("bad parameter name: " + name);
}

std::string Param::name() const {
    if (id_ == kU) return "u";
    if (id_ == kV) return "v";
    return "t" + std::to_string(id_);
}

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

Monomial Monomial::param(Param p, int e) {
    Monomial m;
    if (e != 0) m.exps_[p] = e;
    return m;
}

int Monomial::exponent(Param p) const {
    auto it = exps_.find(p);
    return it == exps_.end() ? 0 : it->second;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r = *this;
    for (const auto& [p, e] : o.exps_) {
        int ne = r.exponent(p) + e;
        if (ne == 0) r.exps_.erase(p);
        else r.exps_[p] = ne;
    }
    return r;
}

Monomial Monomial::pow(int e) const {
    Monomial r;
    if (e == 0) return r;
    for (const auto& [p, k] : exps_) r.exps_[p] = k * e;
    return r;
}

Monomial Monomial::without(Param p) const {
    Monomial r = *this;
    r.exps_.erase(p);
    return r;
}

void Monomial::set_exponent(Param p, int e) {
    if (e == 0) exps_.erase(p);
    else exps_[p] = e;
}

std::string Monomial::to_string() const {
    if (exps_.empty()) return "1";
    std::ostringstream out;
    bool first = true;
    for (const auto& [p, e] : exps_) {
        if (!first) out << "*";
        first = false;
        out << p.name();
        if (e != 1) out << "^" << e;
    }
    return out.str();
}

bool monomial_lex_greater(const Monomial& a, const Monomial& b) {
    // merge-scan descending over the union of parameters
    auto ia = a.exps().rbegin(), ea = a.exps().rend();
    auto ib = b.exps().rbegin(), eb = b.exps().rend();
    while (ia != ea || ib != eb) {
        if (ia == ea) return 0 > ib->second;
        if (ib == eb) return ia->second > 0;
        if (ia->first == ib->first) {
            if (ia->second != ib->second) return ia->second > ib->second;
            ++ia;
            ++ib;
        } else if (ib->first < ia->first) {
            return ia->second > 0;  // a's parameter is higher
        } else {
            return 0 > ib->second;
        }
    }
    return false;  // equal
}

// ---------------------------------------------------------------------------
// Atom
// ---------------------------------------------------------------------------

bool Atom::operator<(const Atom& o) const {
    if (!(lead == o.lead)) return lead < o.lead;
    if (!(trail == o.trail)) return trail < o.trail;
    return c < o.c;
}

int Atom::degree(Param p) const {
    return std::max(lead.exponent(p), trail.exponent(p));
}

std::string Atom::to_string() const {
    std::ostringstream out;
    out << "(" << lead.to_string() << " - ";
    if (!c.is_one()) out << "{" << c.to_string() << "}*";
    out << trail.to_string() << ")";
    return out.str();
}

namespace {

struct CanonAtom {
    enum class Kind { Proper, Constant, ZeroValue } kind;
    Atom atom;         // Proper
    CycloElem unit;    // extracted unit factor (Proper and Constant)
    Monomial mono;     // extracted monomial factor
};

// Canonicalize m1 - c*m2. Extracted unit/mono multiply the owning CoordFn.
CanonAtom canonicalize_atom(long level, const Monomial& m1, const CycloElem& c,
                            const Monomial& m2) {
    CanonAtom out;
    out.unit = CycloElem::one(level);
    if (c.is_zero()) {  // bare monomial folds away
        out.kind = CanonAtom::Kind::Constant;
        out.mono = m1;
        return out;
    }
    // per-parameter min exponent into the common factor
    Monomial g;
    std::set<Param> ps;
    for (const auto& [p, e] : m1.exps()) ps.insert(p);
    for (const auto& [p, e] : m2.exps()) ps.insert(p);
    for (Param p : ps) {
        int m = std::min(m1.exponent(p), m2.exponent(p));
        if (m != 0) g.set_exponent(p, m);
    }
    Monomial a = m1 * g.pow(-1);
    Monomial b = m2 * g.pow(-1);
    if (a == b) {
        CycloElem k = CycloElem::one(level) - c;
        if (k.is_zero()) {
            out.kind = CanonAtom::Kind::ZeroValue;
            return out;
        }
        out.kind = CanonAtom::Kind::Constant;
        out.unit = k;
        out.mono = g * a;
        return out;
    }
    out.kind = CanonAtom::Kind::Proper;
    out.mono = g;
    if (monomial_lex_greater(a, b)) {
        out.atom = Atom{a, c, b};
    } else {
        // a - c*b = (-c) * (b - c^{-1} a)
        out.unit = -c;
        out.atom = Atom{b, c.inverse(), a};
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// CoordFn / CoordBuilder
// ---------------------------------------------------------------------------

bool CoordFn::is_constant_one() const {
    return is_fn() && mono_.empty() && factors_.empty() && unit_.is_one();
}

std::optional<Param> CoordFn::bare_param_power() const {
    if (!is_fn() || !factors_.empty() || mono_.exps().size() != 1) return std::nullopt;
    return mono_.exps().begin()->first;
}

bool CoordFn::contains(Param p) const {
    if (!is_fn()) return false;
    if (mono_.contains(p)) return true;
    for (const auto& [a, e] : factors_)
        if (a.contains(p)) return true;
    return false;
}

std::string CoordFn::to_string() const {
    if (kind_ == Kind::Zero) return "0";
    if (kind_ == Kind::Inf) return "oo";
    std::ostringstream out;
    out << "{" << unit_.to_string() << "}";
    if (!mono_.empty()) out << "*" << mono_.to_string();
    for (const auto& [a, e] : factors_) {
        out << "*" << a.to_string();
        if (e != 1) out << "^" << e;
    }
    return out.str();
}

CoordBuilder::CoordBuilder(long level) : level_(level), unit_(CycloElem::one(level)) {}

CoordBuilder& CoordBuilder::mul_unit(const CycloElem& u) {
    if (u.is_zero()) throw Error("zero unit in coordinate function");
    unit_ = unit_ * u;
    return *this;
}

CoordBuilder& CoordBuilder::mul_mono(const Monomial& m) {
    mono_ = mono_ * m;
    return *this;
}

CoordBuilder& CoordBuilder::mul_atom(const Monomial& m1, const CycloElem& c,
                                     const Monomial& m2, int exp) {
    if (exp == 0) return *this;
    CanonAtom ca = canonicalize_atom(level_, m1, c, m2);
    switch (ca.kind) {
        case CanonAtom::Kind::ZeroValue:
            saw_zero_ = true;
            zero_net_ += exp;
            return *this;
        case CanonAtom::Kind::Constant:
            unit_ = unit_ * ca.unit.pow(exp);
            mono_ = mono_ * ca.mono.pow(exp);
            return *this;
        case CanonAtom::Kind::Proper:
            unit_ = unit_ * ca.unit.pow(exp);
            mono_ = mono_ * ca.mono.pow(exp);
            factors_[ca.atom] += exp;
            return *this;
    }
    return *this;
}

CoordBuilder& CoordBuilder::mul_atom(const Atom& a, int exp) {
    return mul_atom(a.lead, a.c, a.trail, exp);
}

CoordBuilder& CoordBuilder::mul_coord(const CoordFn& f, int exp) {
    if (!f.is_fn()) throw Error("cannot multiply by constant 0/oo coordinate");
    mul_unit(f.unit().pow(exp));
    mul_mono(f.mono().pow(exp));
    for (const auto& [a, e] : f.factors()) mul_atom(a, e * exp);
    return *this;
}

CoordFn CoordBuilder::build() {
    if (saw_zero_) {
        if (zero_net_ > 0) return CoordFn::zero_const();
        if (zero_net_ < 0) return CoordFn::inf_const();
        throw IndeterminateLimit("vanishing factor appears with net exponent zero");
    }
    CoordFn f;
    f.kind_ = CoordFn::Kind::Fn;
    f.unit_ = unit_;
    f.mono_ = mono_;
    for (const auto& [a, e] : factors_)
        if (e != 0) f.factors_.emplace_back(a, e);
    return f;
}

// ---------------------------------------------------------------------------
// ParamCycle / CycleSum
// ---------------------------------------------------------------------------

ParamCycle ParamCycle::renamed_canonically() const {
    std::map<Param, Param> ren;
    int next = 1;
    for (Param p : params) {
        if (p.is_t()) ren.emplace(p, Param::t(next++));
        else ren.emplace(p, p);
    }
    auto ren_mono = [&](const Monomial& m) {
        Monomial r;
        for (const auto& [p, e] : m.exps()) r.set_exponent(ren.at(p), e);
        return r;
    };
    ParamCycle out;
    out.level = level;
    out.coeff = coeff;
    for (Param p : params) out.params.push_back(ren.at(p));
    std::sort(out.params.begin(), out.params.end());
    for (const CoordFn& f : coords) {
        if (!f.is_fn()) {
            out.coords.push_back(f);
            continue;
        }
        CoordBuilder b(level);
        b.mul_unit(f.unit());
        b.mul_mono(ren_mono(f.mono()));
        for (const auto& [a, e] : f.factors())
            b.mul_atom(ren_mono(a.lead), a.c, ren_mono(a.trail), e);
        out.coords.push_back(b.build());
    }
    return out;
}

std::string ParamCycle::to_string() const {
    std::ostringstream out;
    out << rat_to_string(coeff) << " * [";
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i) out << ", ";
        out << coords[i].to_string();
    }
    out << "] over (";
    for (size_t i = 0; i < params.size(); ++i) {
        if (i) out << ",";
        out << params[i].name();
    }
    out << ")";
    return out.str();
}

std::string cycle_key(const ParamCycle& c) {
    std::ostringstream out;
    for (Param p : c.params) out << p.name() << ";";
    out << "|";
    for (const CoordFn& f : c.coords) out << f.to_string() << ";";
    return out.str();
}

std::string CycleSum::to_string() const {
    if (terms.empty()) return "(empty sum)";
    std::ostringstream out;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i) out << "\n";
        out << terms[i].to_string();
    }
    return out.str();
}

void accumulate(CycleSum& sum, const ParamCycle& term) {
    if (term.coeff == 0) return;
    if (sum.level == 0) sum.level = term.level;
    std::string key = cycle_key(term);
    for (auto it = sum.terms.begin(); it != sum.terms.end(); ++it) {
        if (cycle_key(*it) == key) {
            it->coeff += term.coeff;
            it->coeff.canonicalize();
            if (it->coeff == 0) sum.terms.erase(it);
            return;
        }
    }
    sum.terms.push_back(term);
}

CycleSum combine(const CycleSum& s) {
    CycleSum out;
    out.level = s.level;
    for (const ParamCycle& t : s.terms) accumulate(out, t);
    return out;
}

CycleSum scaled(const CycleSum& s, const Rat& f) {
    CycleSum out;
    out.level = s.level;
    if (f == 0) return out;
    for (ParamCycle t : s.terms) {
        t.coeff *= f;
        t.coeff.canonicalize();
        out.terms.push_back(std::move(t));
    }
    return out;
}

CycleSum concat(const CycleSum& a, const CycleSum& b) {
    CycleSum out = a;
    if (out.level == 0) out.level = b.level;
    for (const ParamCycle& t : b.terms) accumulate(out, t);
    return out;
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace {

CoordFn subst_finite_coord(long level, const CoordFn& f, Param p, const SubstFinite& r) {
    if (!f.is_fn()) return f;
    CoordBuilder b(level);
    b.mul_unit(f.unit());
    int me = f.mono().exponent(p);
    b.mul_mono(f.mono().without(p));
    if (me != 0) {
        b.mul_unit(r.unit.pow(me));
        b.mul_mono(r.mono.pow(me));
    }
    for (const auto& [a, e] : f.factors()) {
        int el = a.lead.exponent(p), et = a.trail.exponent(p);
        if (el == 0 && et == 0) {
            b.mul_atom(a, e);
            continue;
        }
        Monomial lead2 = a.lead.without(p) * r.mono.pow(el);
        Monomial trail2 = a.trail.without(p) * r.mono.pow(et);
        // ul*lead2 - c*ut*trail2 = ul * (lead2 - (c ut/ul) trail2)
        CycloElem ul = r.unit.pow(el);
        CycloElem ut = r.unit.pow(et);
        b.mul_unit(ul.pow(e));
        b.mul_atom(lead2, a.c * ut / ul, trail2, e);
    }
    return b.build();
}

CoordFn subst_limit_coord(long level, const CoordFn& f, Param p, bool to_zero) {
    if (!f.is_fn()) return f;
    long order;
    if (to_zero) {
        // canonical atoms neither vanish nor blow up at p = 0
        order = f.mono().exponent(p);
    } else {
        order = -f.mono().exponent(p);
        for (const auto& [a, e] : f.factors()) order -= static_cast<long>(e) * a.degree(p);
    }
    if (order > 0) return CoordFn::zero_const();
    if (order < 0) return CoordFn::inf_const();

    CoordBuilder b(level);
    b.mul_unit(f.unit());
    b.mul_mono(f.mono());  // p-powers cancel against atom leading parts below
    for (const auto& [a, e] : f.factors()) {
        int el = a.lead.exponent(p), et = a.trail.exponent(p);
        if (el == et) {  // canonical atoms force el == et == 0
            if (el != 0) throw IndeterminateLimit("atom limit is 0 - 0 at " + p.name());
            b.mul_atom(a, e);
            continue;
        }
        bool lead_dominates = to_zero ? (el < et) : (el > et);
        if (lead_dominates) {
            b.mul_mono(a.lead.pow(e));
        } else {
            b.mul_unit((-a.c).pow(e));
            b.mul_mono(a.trail.pow(e));
        }
    }
    CoordFn out = b.build();
    if (out.is_fn() && out.mono().contains(p))
        throw Error("internal: leading-order collapse left a live parameter");
    return out;
}

}  // namespace

ParamCycle substitute(const ParamCycle& c, Param p, const SubstValue& value) {
    if (std::find(c.params.begin(), c.params.end(), p) == c.params.end())
        throw DomainError("substituted parameter not in cycle: " + p.name());

    ParamCycle out;
    out.level = c.level;
    out.coeff = c.coeff;
    bool keep_p = false;
    if (const SubstFinite* fin = std::get_if<SubstFinite>(&value)) {
        if (fin->unit.is_zero()) throw DomainError("finite replacement with zero unit");
        keep_p = fin->mono.contains(p);
        for (const CoordFn& f : c.coords)
            out.coords.push_back(subst_finite_coord(c.level, f, p, *fin));
    } else {
        bool to_zero = std::holds_alternative<SubstZero>(value);
        for (const CoordFn& f : c.coords)
            out.coords.push_back(subst_limit_coord(c.level, f, p, to_zero));
    }
    for (Param q : c.params)
        if (!(q == p) || keep_p) out.params.push_back(q);
    return out;
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

NormalizeResult normalize(const ParamCycle& c) {
    // re-canonicalize every coordinate (idempotent for already-canonical input)
    ParamCycle canon;
    canon.level = c.level;
    canon.params = c.params;
    canon.coeff = c.coeff;
    for (const CoordFn& f : c.coords) {
        if (!f.is_fn()) {
            canon.coords.push_back(f);
            continue;
        }
        CoordBuilder b(c.level);
        b.mul_coord(f);
        canon.coords.push_back(b.build());
    }

    for (const CoordFn& f : canon.coords)
        if (f.is_constant_one())
            return {NormStatus::Empty, {}, "coordinate identically 1"};

    for (size_t j = 0; j < canon.coords.size(); ++j) {
        auto bare = canon.coords[j].bare_param_power();
        if (!bare) continue;
        bool elsewhere = false;
        for (size_t k = 0; k < canon.coords.size() && !elsewhere; ++k)
            if (k != j && canon.coords[k].contains(*bare)) elsewhere = true;
        if (!elsewhere)
            return {NormStatus::Degenerate, {},
                    "coordinate " + std::to_string(j + 1) + " is a free power of " + bare->name()};
    }

    for (Param p : canon.params) {
        bool used = false;
        for (const CoordFn& f : canon.coords)
            if (f.contains(p)) { used = true; break; }
        if (!used)
            return {NormStatus::Degenerate, {},
                    "parameter " + p.name() + " unused (positive-dimensional fibres)"};
    }

    return {NormStatus::Ok, std::move(canon), ""};
}

// ---------------------------------------------------------------------------
// Faces and boundary
// ---------------------------------------------------------------------------

namespace {

struct FaceComponent {
    enum class Kind { AtomLocus, ParamBoundary } kind = Kind::AtomLocus;
    Atom atom;            // AtomLocus
    Param param{Param::u()};
    bool at_zero = false; // ParamBoundary: p -> 0 (else p -> infinity)
    int multiplicity = 1;
};

// Solve atom = 0 for a parameter carried with exponent one on exactly one
// side; preference u, then v, then the highest-index t.
std::pair<Param, SubstFinite> solve_atom(const Atom& a) {
    std::vector<Param> candidates;
    candidates.push_back(Param::u());
    candidates.push_back(Param::v());
    std::vector<Param> ts;
    for (const auto& [p, e] : a.lead.exps())
        if (p.is_t()) ts.push_back(p);
    for (const auto& [p, e] : a.trail.exps())
        if (p.is_t()) ts.push_back(p);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) candidates.push_back(*it);

    for (Param p : candidates) {
        int el = a.lead.exponent(p), et = a.trail.exponent(p);
        if (el == 1 && et == 0) {
            // p * L = c * trail  =>  p = c * trail * L^{-1}
            SubstFinite r{a.c, a.trail * a.lead.without(p).pow(-1)};
            return {p, r};
        }
        if (et == 1 && el == 0) {
            // lead = c * p * T  =>  p = c^{-1} * lead * T^{-1}
            SubstFinite r{a.c.inverse(), a.lead * a.trail.without(p).pow(-1)};
            return {p, r};
        }
    }
    throw UnsolvableAtom("cannot solve " + a.to_string() + " for a unit-exponent parameter");
}

}  // namespace

CycleSum face(const ParamCycle& c, size_t coord_idx, Eps eps, FaceDiagnostics* diag,
              ImproperPolicy policy) {
    if (coord_idx >= c.coords.size()) throw DomainError("face index out of range");
    const CoordFn& f = c.coords[coord_idx];
    CycleSum out;
    out.level = c.level;
    if (!f.is_fn())
        throw AdmissibilityViolation("face of a coordinate that is constant 0/oo");

    bool want_zero = (eps == Eps::Zero);

    std::vector<FaceComponent> comps;
    for (const auto& [a, e] : f.factors()) {
        if (want_zero ? e > 0 : e < 0) {
            FaceComponent fc;
            fc.kind = FaceComponent::Kind::AtomLocus;
            fc.atom = a;
            fc.multiplicity = std::abs(e);
            comps.push_back(std::move(fc));
        }
    }
    for (Param p : c.params) {
        long ord0 = f.mono().exponent(p);
        long ordinf = -f.mono().exponent(p);
        for (const auto& [a, e] : f.factors()) ordinf -= static_cast<long>(e) * a.degree(p);
        long m0 = want_zero ? ord0 : -ord0;
        long minf = want_zero ? ordinf : -ordinf;
        if (m0 > 0) {
            FaceComponent fc;
            fc.kind = FaceComponent::Kind::ParamBoundary;
            fc.param = p;
            fc.at_zero = true;
            fc.multiplicity = static_cast<int>(m0);
            comps.push_back(std::move(fc));
        }
        if (minf > 0) {
            FaceComponent fc;
            fc.kind = FaceComponent::Kind::ParamBoundary;
            fc.param = p;
            fc.at_zero = false;
            fc.multiplicity = static_cast<int>(minf);
            comps.push_back(std::move(fc));
        }
    }

    for (const FaceComponent& comp : comps) {
        // restrict the remaining coordinates to this component
        ParamCycle rest;
        rest.level = c.level;
        rest.params = c.params;
        rest.coeff = c.coeff * comp.multiplicity;
        rest.coeff.canonicalize();
        for (size_t j = 0; j < c.coords.size(); ++j)
            if (j != coord_idx) rest.coords.push_back(c.coords[j]);

        ParamCycle restricted;
        if (comp.kind == FaceComponent::Kind::AtomLocus) {
            auto [p, repl] = solve_atom(comp.atom);
            restricted = substitute(rest, p, SubstValue(repl));
            if (diag) {
                // transversality: another component of this coordinate
                // vanishing identically under the solution is an overlap
                for (const FaceComponent& other : comps) {
                    if (&other == &comp || other.kind != FaceComponent::Kind::AtomLocus) continue;
                    const Atom& oa = other.atom;
                    int el = oa.lead.exponent(p), et = oa.trail.exponent(p);
                    Monomial lead2 = oa.lead.without(p) * repl.mono.pow(el);
                    Monomial trail2 = oa.trail.without(p) * repl.mono.pow(et);
                    CycloElem ul = repl.unit.pow(el), ut = repl.unit.pow(et);
                    CanonAtom probe = canonicalize_atom(c.level, lead2, oa.c * ut / ul, trail2);
                    if (probe.kind == CanonAtom::Kind::ZeroValue)
                        diag->overlap_warnings.push_back(
                            "component " + comp.atom.to_string() + " lies inside " +
                            oa.to_string() + " at coordinate " + std::to_string(coord_idx + 1));
                }
            }
        } else {
            restricted = substitute(rest, comp.param,
                                    comp.at_zero ? SubstValue(SubstZero{})
                                                 : SubstValue(SubstInfinity{}));
        }

        NormalizeResult norm = normalize(restricted);
        if (norm.status == NormStatus::Empty) {
            if (diag) ++diag->dropped_empty;
            continue;
        }
        if (norm.status == NormStatus::Degenerate) {
            if (diag) ++diag->dropped_degenerate;
            continue;
        }
        bool improper = false;
        for (const CoordFn& g : norm.cycle.coords)
            if (!g.is_fn()) improper = true;
        if (improper) {
            if (policy == ImproperPolicy::Throw)
                throw AdmissibilityViolation("surviving face term has a constant 0/oo coordinate");
            if (diag)
                diag->improper_terms.push_back("coordinate " + std::to_string(coord_idx + 1) +
                                               (eps == Eps::Zero ? " at 0: " : " at oo: ") +
                                               norm.cycle.to_string());
            continue;
        }
        accumulate(out, norm.cycle.renamed_canonically());
    }
    return out;
}

CycleSum boundary(const ParamCycle& c, FaceDiagnostics* diag, ImproperPolicy policy) {
    CycleSum out;
    out.level = c.level;
    for (size_t i = 0; i < c.coords.size(); ++i) {
        int sign = (i % 2 == 0) ? 1 : -1;  // (-1)^{i} for 0-based i
        CycleSum f0 = face(c, i, Eps::Zero, diag, policy);
        CycleSum finf = face(c, i, Eps::Infinity, diag, policy);
        for (ParamCycle t : f0.terms) {
            t.coeff *= sign;
            accumulate(out, t);
        }
        for (ParamCycle t : finf.terms) {
            t.coeff *= -sign;
            accumulate(out, t);
        }
    }
    return out;
}

CycleSum boundary(const CycleSum& s, FaceDiagnostics* diag, ImproperPolicy policy) {
    CycleSum out;
    out.level = s.level;
    for (const ParamCycle& t : s.terms) {
        CycleSum b = boundary(t, diag, policy);
        for (const ParamCycle& bt : b.terms) accumulate(out, bt);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

std::optional<EvalValue> eval_coord(const CoordFn& f, const std::map<Param, CycloElem>& point) {
    if (f.kind() == CoordFn::Kind::Zero) {
        EvalValue r;
        r.infinite = false;
        if (!point.empty()) r.value = CycloElem::zero(point.begin()->second.level());
        return r;
    }
    if (f.kind() == CoordFn::Kind::Inf) {
        EvalValue r;
        r.infinite = true;
        return r;
    }
    long N = f.unit().level();
    auto eval_mono = [&](const Monomial& m) -> std::optional<CycloElem> {
        CycloElem acc = CycloElem::one(N);
        for (const auto& [p, e] : m.exps()) {
            auto it = point.find(p);
            if (it == point.end()) throw DomainError("point missing parameter " + p.name());
            if (it->second.is_zero() && e < 0) return std::nullopt;
            acc = acc * it->second.pow(e);
        }
        return acc;
    };
    CycloElem num = f.unit();
    CycloElem den = CycloElem::one(N);
    {
        Monomial pos, neg;
        for (const auto& [p, e] : f.mono().exps())
            (e > 0 ? pos : neg).set_exponent(p, std::abs(e));
        auto pv = eval_mono(pos);
        auto nv = eval_mono(neg);
        if (!pv || !nv) return std::nullopt;
        num = num * *pv;
        den = den * *nv;
    }
    bool num_zero = false;
    for (const auto& [a, e] : f.factors()) {
        auto lv = eval_mono(a.lead);
        auto tv = eval_mono(a.trail);
        if (!lv || !tv) return std::nullopt;
        CycloElem val = *lv - a.c * *tv;
        if (val.is_zero()) {
            if (e > 0) {
                num_zero = true;
            } else {
                EvalValue r;
                r.infinite = true;
                return r;
            }
        } else {
            if (e > 0) num = num * val.pow(e);
            else den = den * val.pow(-e);
        }
    }
    if (den.is_zero()) return std::nullopt;
    EvalValue r;
    r.infinite = false;
    if (num_zero || num.is_zero()) {
        r.value = CycloElem::zero(N);
        return r;
    }
    r.value = num / den;
    return r;
}

} // namespace hcg
