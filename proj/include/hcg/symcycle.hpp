#ifndef HCG_SYMCYCLE_HPP
#define HCG_SYMCYCLE_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hcg/cyclo.hpp"

namespace hcg {

// ---------------------------------------------------------------------------
// Parameters. Torus parameters t1, t2, ... plus the auxiliary u and v,
// totally ordered t1 < t2 < ... < u < v.
// ---------------------------------------------------------------------------
class Param {
  public:
    static Param t(int i);
    static Param u();
    static Param v();
    static Param from_string(const std::string& name);

    bool is_t() const { return id_ < kU; }
    bool is_u() const { return id_ == kU; }
    bool is_v() const { return id_ == kV; }
    int t_index() const { return id_; }
    int id() const { return id_; }
    std::string name() const;

    bool operator<(const Param& o) const { return id_ < o.id_; }
    bool operator==(const Param& o) const { return id_ == o.id_; }
    bool operator!=(const Param& o) const { return id_ != o.id_; }

  private:
    explicit Param(int id) : id_(id) {}
    static constexpr int kU = 1 << 20;
    static constexpr int kV = kU + 1;
    int id_;
};

// ---------------------------------------------------------------------------
// Laurent monomials in the parameters. No zero exponents are stored.
// ---------------------------------------------------------------------------
class Monomial {
  public:
    Monomial() = default;
    static Monomial param(Param p, int e = 1);

    bool empty() const { return exps_.empty(); }
    int exponent(Param p) const;
    bool contains(Param p) const { return exps_.count(p) != 0; }
    const std::map<Param, int>& exps() const { return exps_; }

    Monomial operator*(const Monomial& o) const;
    Monomial pow(int e) const;
    Monomial without(Param p) const;
    void set_exponent(Param p, int e);  // e == 0 erases

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
    bool operator!=(const Monomial& o) const { return exps_ != o.exps_; }
    bool operator<(const Monomial& o) const { return exps_ < o.exps_; }  // container key order

    std::string to_string() const;  // "1" for the empty monomial

  private:
    std::map<Param, int> exps_;
};

// Orientation order for atoms: scan parameters from highest (v) down; the
// first differing exponent decides, larger exponent wins.
bool monomial_lex_greater(const Monomial& a, const Monomial& b);

// ---------------------------------------------------------------------------
// Atom: the two-monomial factor  lead - c * trail,  canonically oriented
// (lead lexicographically greater, per-parameter min exponent zero, c != 0).
// ---------------------------------------------------------------------------
struct Atom {
    Monomial lead;
    CycloElem c;
    Monomial trail;

    bool operator==(const Atom& o) const {
        return lead == o.lead && trail == o.trail && c == o.c;
    }
    bool operator<(const Atom& o) const;
    int degree(Param p) const;  // max of the two exponents (min is 0)
    bool contains(Param p) const { return lead.contains(p) || trail.contains(p); }
    std::string to_string() const;
};

// ---------------------------------------------------------------------------
// Coordinate function: unit * mono * prod_i atom_i^exp_i, or one of the
// constants 0 / infinity that arise as leading-order limits.
// ---------------------------------------------------------------------------
class CoordFn {
  public:
    enum class Kind { Fn, Zero, Inf };

    CoordFn() : kind_(Kind::Zero) {}
    static CoordFn zero_const() { CoordFn f; f.kind_ = Kind::Zero; return f; }
    static CoordFn inf_const() { CoordFn f; f.kind_ = Kind::Inf; return f; }

    Kind kind() const { return kind_; }
    bool is_fn() const { return kind_ == Kind::Fn; }
    const CycloElem& unit() const { return unit_; }
    const Monomial& mono() const { return mono_; }
    const std::vector<std::pair<Atom, int>>& factors() const { return factors_; }

    bool is_constant_one() const;
    bool is_constant() const { return is_fn() && mono_.empty() && factors_.empty(); }
    // unit * p^k with no atoms; returns the parameter if so
    std::optional<Param> bare_param_power() const;
    bool contains(Param p) const;

    std::string to_string() const;

  private:
    friend class CoordBuilder;
    Kind kind_ = Kind::Fn;
    CycloElem unit_;
    Monomial mono_;
    std::vector<std::pair<Atom, int>> factors_;  // sorted by atom, exponents nonzero
};

// Accumulates factors and produces a canonical CoordFn. Orientation flips,
// per-parameter gcd extraction and merging of equal atoms happen here; a
// factor that collapses to zero makes the whole coordinate 0 or infinity
// depending on the net exponent.
class CoordBuilder {
  public:
    explicit CoordBuilder(long level);

    CoordBuilder& mul_unit(const CycloElem& u);
    CoordBuilder& mul_mono(const Monomial& m);
    // the factor (m1 - c*m2)^exp, canonicalized
    CoordBuilder& mul_atom(const Monomial& m1, const CycloElem& c, const Monomial& m2, int exp);
    CoordBuilder& mul_atom(const Atom& a, int exp);
    CoordBuilder& mul_coord(const CoordFn& f, int exp = 1);

    CoordFn build();

    long level() const { return level_; }

  private:
    long level_;
    CycloElem unit_;
    Monomial mono_;
    std::map<Atom, int> factors_;
    int zero_net_ = 0;     // net exponent of identically-zero factors
    bool saw_zero_ = false;
};

// ---------------------------------------------------------------------------
// Parametrized precycle and formal sums.
// ---------------------------------------------------------------------------
struct ParamCycle {
    long level = 0;                 // cyclotomic level N
    std::vector<Param> params;      // sorted ascending
    std::vector<CoordFn> coords;
    Rat coeff = Rat(1);

    size_t dim() const { return params.size(); }
    size_t ambient() const { return coords.size(); }
    // relabel t-parameters to consecutive t1..tk preserving order
    ParamCycle renamed_canonically() const;
    std::string to_string() const;
};

// key identifying the support representation (params + coords, no coeff)
std::string cycle_key(const ParamCycle& c);

struct CycleSum {
    long level = 0;
    std::vector<ParamCycle> terms;

    bool empty() const { return terms.empty(); }
    std::string to_string() const;
};

// append with structural combining (equal keys add coefficients; zeros drop)
void accumulate(CycleSum& sum, const ParamCycle& term);
CycleSum combine(const CycleSum& s);
CycleSum scaled(const CycleSum& s, const Rat& f);
CycleSum concat(const CycleSum& a, const CycleSum& b);

// ---------------------------------------------------------------------------
// Substitution.
// ---------------------------------------------------------------------------
struct SubstFinite {
    CycloElem unit;
    Monomial mono;
};
struct SubstZero {};
struct SubstInfinity {};
using SubstValue = std::variant<SubstFinite, SubstZero, SubstInfinity>;

// Eliminates p (unless the finite replacement itself mentions p, as in the
// identity substitution p -> p). Zero/Infinity take leading-order limits,
// coordinate by coordinate.
ParamCycle substitute(const ParamCycle& c, Param p, const SubstValue& value);

// ---------------------------------------------------------------------------
// Normalization: detect empty and degenerate pieces.
// ---------------------------------------------------------------------------
enum class NormStatus { Ok, Empty, Degenerate };

struct NormalizeResult {
    NormStatus status;
    ParamCycle cycle;      // canonical form when status == Ok
    std::string reason;    // which rule fired
};

NormalizeResult normalize(const ParamCycle& c);

// ---------------------------------------------------------------------------
// Face maps and the boundary operator.
// ---------------------------------------------------------------------------
enum class Eps { Zero, Infinity };

struct FaceDiagnostics {
    int dropped_empty = 0;
    int dropped_degenerate = 0;
    std::vector<std::string> overlap_warnings;  // component inside another component's support
    std::vector<std::string> improper_terms;    // surviving pieces with a constant 0/oo coordinate
};

// A surviving face piece with a coordinate identically 0/oo witnesses an
// improper intersection with a deeper face. Throw rejects the input cycle;
// CollectAndDrop records the piece in the diagnostics and excludes it.
enum class ImproperPolicy { Throw, CollectAndDrop };

// Components of {coord_j = eps} with multiplicities; j is 0-based.
// Each surviving component is normalized; empty/degenerate pieces drop.
CycleSum face(const ParamCycle& c, size_t coord_idx, Eps eps, FaceDiagnostics* diag = nullptr,
              ImproperPolicy policy = ImproperPolicy::Throw);

// sum_i (-1)^{i-1} (face(i, 0) - face(i, inf)), structurally combined
CycleSum boundary(const ParamCycle& c, FaceDiagnostics* diag = nullptr,
                  ImproperPolicy policy = ImproperPolicy::Throw);
CycleSum boundary(const CycleSum& s, FaceDiagnostics* diag = nullptr,
                  ImproperPolicy policy = ImproperPolicy::Throw);

// ---------------------------------------------------------------------------
// Exact evaluation at a point (parameters -> F), used by the samplers.
// ---------------------------------------------------------------------------
struct EvalValue {
    bool infinite = false;
    CycloElem value;  // meaningful when !infinite
};

// nullopt when a zero-to-negative-power is hit (0 and infinity collide)
std::optional<EvalValue> eval_coord(const CoordFn& f,
                                    const std::map<Param, CycloElem>& point);

} // namespace hcg

#endif
