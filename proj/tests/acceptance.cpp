// Acceptance suite: runs every documented verification criterion at its
// stated tolerance and prints one pass/fail line per criterion.
//
// The first K7 presentation is special-cased: as printed it is not a closed
// cycle (its face identities hold only up to a transposition of two cube
// coordinates, and it has improper deep-face pieces). That sub-case is
// reported FAIL on its own line; the suite pins the defect exactly and only
// treats a DEVIATION from the pinned analysis as fatal.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "hcg/constructions.hpp"
#include "hcg/equality.hpp"
#include "hcg/errors.hpp"
#include "hcg/numtheory.hpp"
#include "hcg/regulator.hpp"

using namespace hcg;

namespace {

int g_fatal = 0;

void line(const std::string& name, bool pass, const std::string& detail = "",
          bool fatal_on_fail = true) {
    std::printf("%-4s %s%s%s\n", pass ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass && fatal_on_fail) ++g_fatal;
}

CycleSpec spec_of(long n, long N, long b, Variant v) {
    CycleSpec s;
    s.n = n;
    s.N = N;
    s.b = b;
    s.variant = v;
    return s.resolved();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

void criterion1_closedness() {
    struct Entry {
        long n;
        std::vector<long> Ns;
        Variant var;
    };
    std::vector<Entry> grid = {
        {2, {2, 3, 5, 7, 12}, Variant::K3},       {3, {2, 3, 5, 7, 12}, Variant::K5},
        {4, {2, 3, 5}, Variant::K7Second},        {5, {2, 5}, Variant::K9Appendix},
        {5, {2, 5}, Variant::General},            {6, {2, 3}, Variant::General},
        {7, {2, 3}, Variant::General},
    };
    bool ok = true;
    int runs = 0;
    double worst = 0;
    for (const Entry& e : grid) {
        for (long N : e.Ns) {
            for (long b : index_set_A(std::max<long>(N, 3))) {
                if (N == 2 && b != 1) continue;
                if (gcd_long(b, N) != 1) continue;
                auto t0 = std::chrono::steady_clock::now();
                VerificationReport rep = verify_closed(assemble_tildeZ(spec_of(e.n, N, b, e.var)));
                double dt = seconds_since(t0);
                worst = std::max(worst, dt);
                bool entry_ok = rep.pass && rep.diagnostics.improper_terms.empty() && dt < 60.0;
                for (const SumClass& cls : rep.classes.classes) entry_ok = entry_ok && cls.total == 0;
                ok = ok && entry_ok;
                ++runs;
            }
        }
    }
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "%d assemblies, exact zero class totals, slowest run %.2f s", runs, worst);
    line("criterion 1 (closedness grid)", ok, detail);

    // the printed first K7 presentation, run as specified: expected to fail,
    // with the exact defect pinned
    bool pinned = true;
    std::string note;
    for (long N : {2, 3, 5}) {
        VerificationReport rep = verify_closed(assemble_tildeZ(spec_of(4, N, 1, Variant::K7First)));
        long nonzero = 0;
        for (const SumClass& cls : rep.classes.classes)
            if (cls.total != 0) ++nonzero;
        pinned = pinned && !rep.pass && rep.verdict == ZeroResult::Nonzero && nonzero == 4 &&
                 rep.diagnostics.improper_terms.size() == 3;
    }
    line("criterion 1 (first K7 presentation, as printed)", false,
         "not closed: four surviving transposition-paired classes and three improper "
         "deep-face pieces",
         false);
    line("criterion 1 (first K7 defect reproduces the pinned analysis)", pinned,
         "verifier output matches the recorded defect exactly");
}

void criterion2_cancellation() {
    bool ok = true;
    EqualityOptions opt;
    opt.trials = 5;
    int checked = 0, nonempty = 0;
    for (long n : std::vector<long>{5, 6, 7}) {
        CycleSpec s = spec_of(n, (n == 6) ? 3 : 2, 1, Variant::General);
        for (long i = 2; i <= n - 1; ++i) {
            for (long j = 1; j < i && j <= n - 2; ++j) {
                NormalizeResult ci = build_W2_component(s, i);
                NormalizeResult cj = build_W2_component(s, j);
                if (ci.status != NormStatus::Ok || cj.status != NormStatus::Ok) continue;
                CycleSum left = face(ci.cycle, static_cast<size_t>(j - 1), Eps::Infinity);
                CycleSum right = face(cj.cycle, static_cast<size_t>(i - 2), Eps::Infinity);
                ++checked;
                if (left.terms.empty() && right.terms.empty()) continue;
                ++nonempty;
                ok = ok && left.terms.size() == 1 && right.terms.size() == 1 &&
                     cycles_equal(left.terms[0], right.terms[0], opt) == EqResult::Equal;
            }
        }
    }
    char detail[120];
    std::snprintf(detail, sizeof detail, "%d pairs (%d nonempty), 5 exact trials each",
                  checked, nonempty);
    line("criterion 2 (pairwise cancellation)", ok && nonempty > 0, detail);

    // mutations must break the verification
    bool mut_ok = true;
    {
        CycleSpec s = spec_of(5, 2, 1, Variant::General);
        CycleSum dropped;
        dropped.level = 2;
        accumulate(dropped, build_Z(s));
        for (const ParamCycle& t : build_W1(s).terms) accumulate(dropped, t);
        CycleSum w2 = build_W2(s);
        for (size_t k = 1; k < w2.terms.size(); ++k) accumulate(dropped, w2.terms[k]);
        mut_ok = mut_ok && !verify_closed(dropped).pass;

        CycleSum scaled_w1;
        scaled_w1.level = 2;
        accumulate(scaled_w1, build_Z(s));
        for (ParamCycle t : build_W1(s).terms) {
            t.coeff *= 2;
            accumulate(scaled_w1, t);
        }
        for (const ParamCycle& t : w2.terms) accumulate(scaled_w1, t);
        mut_ok = mut_ok && !verify_closed(scaled_w1).pass;
    }
    line("criterion 2 (mutation tests fail verification)", mut_ok);
}

void criterion3_cross_variant() {
    bool ok = true;
    {
        CycleSum a = assemble_tildeZ(spec_of(4, 3, 1, Variant::General));
        CycleSum b = assemble_tildeZ(spec_of(4, 3, 1, Variant::K7Second));
        ok = ok && a.terms.size() == b.terms.size();
        for (size_t i = 0; ok && i < a.terms.size(); ++i)
            ok = cycle_key(a.terms[i]) == cycle_key(b.terms[i]) &&
                 a.terms[i].coeff == b.terms[i].coeff;
    }
    for (long N : {2, 5}) {
        CycleSum a = assemble_tildeZ(spec_of(5, N, 1, Variant::General));
        CycleSum b = assemble_tildeZ(spec_of(5, N, 1, Variant::K9Appendix));
        ok = ok && a.terms.size() == b.terms.size();
        for (size_t i = 0; ok && i < a.terms.size(); ++i)
            ok = cycles_equal(a.terms[i], b.terms[i]) == EqResult::Equal &&
                 a.terms[i].coeff == b.terms[i].coeff;
    }
    line("criterion 3 (cross-variant agreement)", ok,
         "general n=4 vs second K7; general n=5 vs the literal n=5 displays, termwise");
}

void criterion4_regulator() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::vector<std::array<long, 3>> combos = {{5, 1, 1}, {5, 2, 1}, {2, 1, 1}};
    struct Gate {
        long n;
        long order;
        double tol;
    };
    for (const Gate& g : {Gate{2, 64, 1e-10}, Gate{3, 64, 1e-9}, Gate{4, 48, 1e-6}}) {
        for (auto [N, b, a] : combos) {
            IntegralJob job{g.n, N, b, a, IntegralMethod::TensorGauss, g.order, 42};
            Cplx expect = regulator_closed_form(g.n, N, b, a, 1e-12).raw;
            double err = std::abs(regulator_integral(job).value - expect);
            ok = ok && err < g.tol;
        }
    }
    // n = 5 Monte Carlo, 10^7 samples averaged over seeds
    for (auto [N, b, a] : combos) {
        const int kSeeds = 5;
        const long kPerSeed = 2000000;
        Cplx mean{0, 0};
        double var_acc = 0;
        for (int seed = 1; seed <= kSeeds; ++seed) {
            IntegralJob job{5, N, b, a, IntegralMethod::MonteCarlo, kPerSeed,
                            static_cast<std::uint64_t>(seed)};
            IntegralResult r = regulator_integral(job);
            mean += r.value;
            var_acc += r.std_error * r.std_error;
        }
        mean /= static_cast<double>(kSeeds);
        double se = std::sqrt(var_acc) / kSeeds;
        Cplx expect = regulator_closed_form(5, N, b, a, 1e-12).raw;
        ok = ok && std::abs(mean - expect) <= 3.0 * se;
    }
    double dt = seconds_since(t0);
    char detail[120];
    std::snprintf(detail, sizeof detail,
                  "tensor n=2,3,4 and seed-averaged 1e7-sample Monte Carlo n=5; %.1f s", dt);
    line("criterion 4 (regulator vs closed form)", ok && dt < 300.0, detail);
}

void criterion5_special_values() {
    bool ok = true;
    {
        IntegralJob job{3, 2, 1, 1, IntegralMethod::TensorGauss, 64, 42};
        Cplx doubled = 2.0 * regulator_integral(job).value;
        ok = ok && std::abs(doubled - Cplx(6.0 * zeta(3), 0)) < 1e-9;
    }
    {
        IntegralJob job{5, 2, 1, 1, IntegralMethod::MonteCarlo, 10000000, 42};
        IntegralResult r = regulator_integral(job);
        ok = ok && std::abs(r.value - Cplx(15.0 * zeta(5), 0)) <= 3.0 * r.std_error;
    }
    line("criterion 5 (special values)", ok,
         "doubled n=3 cycle gives 6*zeta(3); n=5 cycle gives 15*zeta(5) within MC error "
         "(the doubled-cycle attribution of 15*zeta(5) is flagged in reports)");
}

void criterion6_torsion() {
    TorsionWeight d1;
    d1.N = 2;
    d1.values[1] = 1;
    TorsionWeight f5;
    f5.N = 5;
    f5.values[1] = 1;
    f5.values[4] = 1;
    bool ok = torsion_tau(2, 2, d1).abs_value == Rat(1, 24) &&
              torsion_tau(4, 2, d1).abs_value == Rat(7, 1440) &&
              torsion_tau(6, 2, d1).abs_value == Rat(31, 20160) &&
              torsion_tau(8, 2, d1).abs_value == Rat(127, 483840) &&
              torsion_tau(2, 5, f5).abs_value == Rat(1, 60);
    for (long m = 2; m <= 5; ++m)
        ok = ok && torsion_tau(2 * m, 2, d1).signed_value == torsion_tau_N2(m);
    line("criterion 6 (torsion, exact rationals)", ok,
         "1/24, 7/1440, 31/20160, 127/483840 (printed 635/483840 flagged), 1/60 (printed "
         "1/120 flagged); closed form agrees for m=2..5");
}

void criterion7_basis() {
    bool ok = true;
    double worst_pivot = 1e9, worst_res = 0;
    for (long N : std::vector<long>{3, 4, 5, 7, 8, 9, 12}) {
        for (long n : {2, 3}) {
            RankReport rr = rank_check(n, N, 1e-8);
            ok = ok && rr.rank == euler_phi(N) / 2;
            worst_pivot = std::min(worst_pivot, rr.min_accepted_pivot);
            worst_res = std::max(worst_res, rr.max_eigen_residual);
        }
    }
    ok = ok && worst_pivot > 1e-4 && worst_res < 1e-8;

    double worst_forms = 0, worst_combo = 0;
    for (long N = 3; N <= 16; ++N) {
        for (long n : {2, 3}) {
            long want = (n % 2 == 1) ? 1 : -1;
            for (const DirichletChar& chi : characters(N)) {
                if (chi.parity() != want) continue;
                ZagierValue z = zagier_v1(chi, n);
                worst_forms = std::max(worst_forms, std::abs(z.moebius_form - z.euler_form));
                std::vector<Cplx> va = character_combo_A(chi, n);
                worst_combo = std::max(worst_combo, std::abs(va[0] - z.moebius_form));
                ok = ok && std::abs(z.moebius_form) > 1e-12;
            }
        }
    }
    ok = ok && worst_forms < 1e-12 && worst_combo < 1e-8;
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "ranks phi(N)/2; min pivot %.3g; eigen residual %.2g; v1 forms within "
                  "%.2g; combo within %.2g",
                  worst_pivot, worst_res, worst_forms, worst_combo);
    line("criterion 7 (basis ranks and v1 cross-checks)", ok, detail);
}

void criterion8_properties() {
    bool ok = true;

    // double boundary on the building blocks
    for (long n : {3, 4, 5}) {
        CycleSpec s = spec_of(n, 3, 1, n == 3 ? Variant::K5 : Variant::General);
        std::vector<ParamCycle> pieces = {build_Z(s)};
        pieces.push_back(build_W1_tuple(s));
        if (n >= 4)
            for (long i = 1; i <= n - 1; ++i) {
                NormalizeResult c = build_W2_component(s, i);
                if (c.status == NormStatus::Ok) pieces.push_back(c.cycle);
            }
        for (const ParamCycle& c : pieces)
            ok = ok && sum_is_zero(boundary(boundary(c))).verdict == ZeroResult::Zero;
    }

    // face commutation on the n=4 pieces
    {
        CycleSpec s = spec_of(4, 3, 1, Variant::General);
        std::vector<ParamCycle> pieces = {build_Z(s), build_W1_tuple(s)};
        NormalizeResult w2 = build_W2_component(s, 3);
        pieces.push_back(w2.cycle);
        for (const ParamCycle& c : pieces)
            for (size_t i = 0; i + 1 < c.coords.size() && ok; ++i)
                for (size_t j = i + 1; j < c.coords.size() && ok; ++j)
                    for (Eps e1 : {Eps::Zero, Eps::Infinity})
                        for (Eps e2 : {Eps::Zero, Eps::Infinity}) {
                            CycleSum diff;
                            diff.level = 3;
                            for (const ParamCycle& t : face(c, j, e2).terms)
                                for (const ParamCycle& tt : face(t, i, e1).terms)
                                    accumulate(diff, tt);
                            for (const ParamCycle& t : face(c, i, e1).terms)
                                for (ParamCycle tt_ : face(t, j - 1, e2).terms) {
                                    tt_.coeff = -tt_.coeff;
                                    accumulate(diff, tt_);
                                }
                            ok = ok && sum_is_zero(diff).verdict == ZeroResult::Zero;
                        }
    }

    // polylog identities
    {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> radius(0.0, 0.98), angle(0.0, 2 * M_PI);
        for (int rep = 0; rep < 50 && ok; ++rep) {
            long n = 2 + rep % 3;
            Cplx z = std::polar(radius(rng), angle(rng));
            Cplx lhs = polylog(n, z, 1e-12) + polylog(n, -z, 1e-12);
            Cplx rhs = std::pow(2.0, 1.0 - static_cast<double>(n)) * polylog(n, z * z, 1e-12);
            ok = ok && std::abs(lhs - rhs) < 1e-10;
            Cplx a = polylog(n, z, 1e-12), b = polylog(n, std::conj(z), 1e-12);
            ok = ok && a.real() == b.real() && a.imag() == -b.imag();
        }
    }

    // Gauss sum magnitudes
    for (long N0 = 1; N0 <= 24 && ok; ++N0) {
        if (N0 % 4 == 2) continue;
        for (const DirichletChar& chi : characters(N0)) {
            if (!is_primitive(chi)) continue;
            ok = ok &&
                 std::abs(std::abs(gauss_sum(chi)) - std::sqrt(static_cast<double>(N0))) < 1e-10;
        }
    }

    // exact Bernoulli identities and wrong-parity vanishing
    {
        std::vector<Rat> B = bernoulli_numbers(8);
        for (long n = 2; n <= 8 && ok; ++n) {
            Rat half = bernoulli_poly(n, Rat(1, 2));
            Rat factor =
                Rat(2 - (Int(1) << static_cast<unsigned>(n)), Int(1) << static_cast<unsigned>(n));
            Rat expect = factor * B[static_cast<size_t>(n)];
            expect.canonicalize();
            ok = ok && half == expect;
        }
        TorsionWeight odd5;
        odd5.N = 5;
        odd5.values[1] = 1;
        odd5.values[4] = -1;
        ok = ok && torsion_weight_sum(2, 5, odd5) == 0;
        TorsionWeight even5;
        even5.N = 5;
        even5.values[1] = 1;
        even5.values[4] = 1;
        ok = ok && torsion_weight_sum(3, 5, even5) == 0;
    }

    // Fourier consistency
    for (auto [N, n] : std::vector<std::pair<long, long>>{{5, 2}, {5, 3}, {12, 2}, {12, 3}}) {
        for (long b = 1; b < N && ok; ++b) {
            if (gcd_long(b, N) != 1) continue;
            Cplx li = polylog_root_of_unity(n, N, b, 1e-12);
            Cplx lic = polylog_root_of_unity(n, N, N - b, 1e-12);
            Cplx ksum = li + (n % 2 == 0 ? lic : -lic);
            double fact = 1;
            for (long i = 2; i <= n; ++i) fact *= i;
            Cplx val = -fact / std::pow(Cplx(0, 2 * M_PI), static_cast<double>(n)) * ksum;
            ok = ok && std::abs(val - Cplx(bernoulli_poly(n, Rat(b, N)).get_d(), 0)) < 1e-9;
        }
    }

    line("criterion 8 (property suites)", ok,
         "double boundary, face commutation, polylog identities, Gauss magnitudes, "
         "Bernoulli identities, parity vanishing, Fourier consistency");
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    try {
        criterion1_closedness();
        criterion2_cancellation();
        criterion3_cross_variant();
        criterion4_regulator();
        criterion5_special_values();
        criterion6_torsion();
        criterion7_basis();
        criterion8_properties();
    } catch (const std::exception& e) {
        std::printf("FAIL suite aborted: %s\n", e.what());
        return 1;
    }
    std::printf("acceptance total: %.1f s, %d fatal failure(s)\n", seconds_since(t0), g_fatal);
    return g_fatal == 0 ? 0 : 1;
}
