#pragma once

// Invariant suites run by `juggle verify`. Each check compares a closed form
// with the exact solver, an enumeration, or a second formula.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "chains.hpp"
#include "combinat.hpp"
#include "infinite.hpp"
#include "linalg.hpp"
#include "symfun.hpp"

namespace juggling {

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    std::vector<Check> checks;

    void add(std::string name, bool ok, std::string detail = {}) { checks.push_back({std::move(name), ok, std::move(detail)}); }

    bool passed() const
    {
        for (const auto& c : checks) {
            if (!c.passed)
                return false;
        }
        return true;
    }

    std::size_t failures() const
    {
        std::size_t n = 0;
        for (const auto& c : checks)
            n += !c.passed;
        return n;
    }
};

/// n positive rationals with small denominators summing to 1.
inline std::vector<Rational> random_simplex(std::size_t n, std::mt19937_64& rng, int max_weight = 12)
{
    std::uniform_int_distribution<int> dist(1, max_weight);
    std::vector<Rational> out;
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(dist(rng));
        total += out.back();
    }
    for (auto& x : out)
        x /= total;
    return out;
}

/// A rational in (0,1) with a small denominator.
inline Rational random_unit_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> den(2, 9);
    const int d = den(rng);
    std::uniform_int_distribution<int> num(1, d - 1);
    Rational r(num(rng), d);
    r.canonicalize();
    return r;
}

namespace detail {

template <typename T>
bool solver_agrees(const SparseKernel<T>& k, const Distribution<T>& closed)
{
    auto r = solve_stationary(k);
    const auto* d = std::get_if<Distribution<T>>(&r);
    return d && *d == closed;
}

inline std::string hk(int h, int k) { return "h=" + std::to_string(h) + ",k=" + std::to_string(k); }

} // namespace detail

inline VerifyReport verify_combinat(int max_h)
{
    VerifyReport rep{"combinat", {}};
    for (int h = 0; h <= max_h; ++h) {
        for (int k = 0; k <= h; ++k) {
            const auto words = enumerate_words(h, k);
            bool round = true;
            for (const auto& w : words)
                round = round && partition_to_word(word_to_partition(w), k, h - k) == w;
            rep.add("word/partition round trip " + detail::hk(h, k), round);
            rep.add("|St_{h,k}| = C(h,k) " + detail::hk(h, k), Rational(static_cast<long>(words.size())) == binomial(h, k));
        }
    }
    for (int H = 1; H <= max_h + 1; ++H) {
        std::size_t all = 0;
        for (int K = 1; K <= H; ++K) {
            const auto parts = enumerate_set_partitions(H, K);
            all += parts.size();
            rep.add("|S(H,K)| = S(H,K) H=" + std::to_string(H) + ",K=" + std::to_string(K),
                    Rational(static_cast<long>(parts.size())) == stirling2(H, K));
            bool arch_ok = true;
            for (const auto& s : parts) {
                const auto a = arches(s);
                arch_ok = arch_ok && static_cast<int>(a.size()) == H - K;
                for (const auto& arch : a)
                    arch_ok = arch_ok && arch.cover_count >= 1 && arch.cover_count <= K;
            }
            rep.add("arch count H-K, cover counts in 1..K H=" + std::to_string(H) + ",K=" + std::to_string(K), arch_ok);
            const auto map = lumping_psi(H, K);
            rep.add("psi onto St_{h,k} H=" + std::to_string(H) + ",K=" + std::to_string(K), map.surjective());
        }
        rep.add("|S(H)| = Bell(H) H=" + std::to_string(H), Rational(static_cast<long>(all)) == bell(H));
    }
    for (int h = 0; h <= std::min(max_h, 6); ++h) {
        bool intertwin = true;
        bool commute = true;
        for (const auto& tau : enumerate_all_set_partitions(h)) {
            const auto K = static_cast<int>(tau.block_count());
            for (int i = 0; i <= K + 1; ++i) {
                if (i >= 1 && i <= K)
                    intertwin = intertwin && psi(insert_J(tau, i)) == replace_S(psi(tau).appended(Letter::Empty), i);
                if (h >= 1)
                    commute = commute && down_shift(insert_J(tau, i)) == insert_J(down_shift(tau), i);
            }
        }
        rep.add("psi(J_i(tau)) = S_i(psi(tau) o) h=" + std::to_string(h), intertwin);
        rep.add("J_i(tau) down = J_i(tau down) h=" + std::to_string(h), commute);
    }
    return rep;
}

inline VerifyReport verify_symfun(int max_h, std::uint64_t seed = 1)
{
    VerifyReport rep{"symfun", {}};
    std::mt19937_64 rng(seed);
    for (int h = 0; h <= max_h; ++h) {
        for (int k = 0; k <= h; ++k) {
            std::vector<Rational> xs;
            for (int i = 0; i <= k; ++i)
                xs.push_back(random_unit_rational(rng));
            const auto z = z_mjmc(h, k, xs);
            rep.add("word sum = h_l(y) " + detail::hk(h, k), z == z_mjmc_word_sum(h, k, xs));
            rep.add("first recursion " + detail::hk(h, k), z == z_mjmc_by_first_recursion<Rational>(h, k, xs));
            rep.add("second recursion " + detail::hk(h, k), z == z_mjmc_by_last_recursion<Rational>(h, k, xs));
            const Rational c = random_unit_rational(rng) * 3;
            std::vector<Rational> scaled;
            for (const auto& x : xs)
                scaled.push_back(c * x);
            rep.add("homogeneity " + detail::hk(h, k), z_mjmc(h, k, scaled) == power(c, static_cast<unsigned>(h - k)) * z);
        }
    }
    const std::vector<Rational> qs{Rational(1, 2), Rational(2, 3), Rational(3, 7), Rational(5, 4), Rational(-2, 5)};
    for (const auto& q : qs) {
        bool all = true;
        for (int h = 0; h <= max_h; ++h) {
            for (int k = 0; k <= h; ++k) {
                for (const auto& id : z_specializations(h, k, q))
                    all = all && id.holds();
            }
        }
        rep.add("specializations at q=" + to_string(q), all);
    }
    return rep;
}

inline VerifyReport verify_mjmc(int max_h, std::uint64_t seed = 2)
{
    VerifyReport rep{"mjmc", {}};
    std::mt19937_64 rng(seed);
    for (int h = 1; h <= max_h; ++h) {
        for (int k = 1; k <= h; ++k) {
            for (int trial = 0; trial < 3; ++trial) {
                const auto xs = random_simplex(static_cast<std::size_t>(k) + 1, rng);
                const auto P = build_mjmc(h, k, xs);
                const auto tag = detail::hk(h, k) + " #" + std::to_string(trial);
                rep.add("stochastic " + tag, P.stochastic());
                rep.add("closed form = solver " + tag, detail::solver_agrees(P, stationary_mjmc(h, k, xs)));
                rep.add("partition form conjugate " + tag,
                        verify_intertwining(P, word_partition_map(k, h - k), build_mjmc_partition_form(k, h - k, xs)));
                const auto closed = closed_classes(P);
                rep.add("unique aperiodic closed class " + tag, closed.size() == 1 && self_loop_in(P, closed.front()).has_value());
                if (trial == 0 && h - k >= 1) {
                    const auto pi = stationary_mjmc_partition_form(k, h - k, xs);
                    const auto parts = enumerate_box_partitions(k, h - k);
                    bool ok = true;
                    for (int j = 1; j <= h - k; ++j) {
                        for (int n = 0; n <= k; ++n) {
                            Rational brute = 0;
                            for (std::size_t s = 0; s < parts.size(); ++s) {
                                if (parts[s].part(static_cast<std::size_t>(j)) == n)
                                    brute += pi.weights[s];
                            }
                            ok = ok && brute == marginal_part(j, n, k, h - k, xs);
                        }
                    }
                    rep.add("part marginals " + tag, ok);
                }
            }
        }
    }
    return rep;
}

inline VerifyReport verify_enriched(int max_H, std::uint64_t seed = 3)
{
    VerifyReport rep{"enriched", {}};
    std::mt19937_64 rng(seed);
    for (int H = 1; H <= max_H; ++H) {
        for (int K = 1; K <= H; ++K) {
            const auto xs = random_simplex(static_cast<std::size_t>(K), rng);
            const auto tag = "H=" + std::to_string(H) + ",K=" + std::to_string(K);
            const auto Pt = build_enriched(H, K, xs);
            const auto P = build_mjmc(H - 1, K - 1, xs);
            const auto map = lumping_psi(H, K);
            const auto pit = stationary_enriched(H, K, xs);
            rep.add("intertwining " + tag, verify_intertwining(Pt, map, P));
            rep.add("closed form = solver " + tag, detail::solver_agrees(Pt, pit));
            rep.add("lumped weights " + tag, map.push_forward(pit) == stationary_mjmc(H - 1, K - 1, xs));
            rep.add("fiber sums = word weights " + tag, map.push_forward(enriched_weights(H, K, xs)) == mjmc_weights(H - 1, K - 1, xs));
        }
        for (int K = 1; K <= H; ++K) {
            bool ok = true;
            for (const auto& q : {Rational(1, 2), Rational(3, 5), Rational(7, 3)}) {
                Rational s = 0;
                for (const auto& sigma : enumerate_set_partitions(H, K))
                    s += power(q, static_cast<unsigned>(mahonian_N(sigma)));
                ok = ok && s == q_stirling2(H, K, q);
            }
            rep.add("Mahonian generating function H=" + std::to_string(H) + ",K=" + std::to_string(K), ok);
        }
    }
    return rep;
}

inline VerifyReport verify_adddrop(int max_h, std::uint64_t seed = 4)
{
    VerifyReport rep{"adddrop", {}};
    std::mt19937_64 rng(seed);
    for (int h = 0; h <= max_h; ++h) {
        for (int trial = 0; trial < 3; ++trial) {
            AddDropParams<Rational> p{random_unit_rational(rng), {}};
            for (int i = 0; i < h; ++i)
                p.zs.push_back(random_unit_rational(rng));
            const auto tag = "h=" + std::to_string(h) + " #" + std::to_string(trial);
            const auto P = build_adddrop(h, p);
            rep.add("stochastic " + tag, P.stochastic());
            rep.add("closed form = solver " + tag, detail::solver_agrees(P, stationary_adddrop(h, p)));
            if (h + 1 <= 6) {
                const auto Pt = build_enriched_adddrop(h + 1, p);
                rep.add("enriched closed form = solver " + tag, detail::solver_agrees(Pt, stationary_enriched_adddrop(h + 1, p)));
                rep.add("intertwining " + tag, verify_intertwining(Pt, lumping_psi_all(h + 1), P));
            }
        }
    }
    return rep;
}

inline VerifyReport verify_annihilation(int max_h, std::uint64_t seed = 5)
{
    VerifyReport rep{"annihilation", {}};
    std::mt19937_64 rng(seed);
    for (int h = 0; h <= max_h; ++h) {
        for (int trial = 0; trial < 3; ++trial) {
            const auto zs = random_simplex(static_cast<std::size_t>(h) + 1, rng);
            const auto tag = "h=" + std::to_string(h) + " #" + std::to_string(trial);
            const auto P = build_annihilation(h, zs);
            const auto Pt = build_enriched_annihilation(h + 1, zs);
            const auto pi = stationary_annihilation(h, zs);
            const auto pit = stationary_enriched_annihilation(h + 1, zs);
            rep.add("closed form = solver " + tag, detail::solver_agrees(P, pi));
            rep.add("enriched closed form = solver " + tag, detail::solver_agrees(Pt, pit));
            rep.add("P^h rows = Pi " + tag, rows_all_equal_to(matpow(P, h), pi.weights));
            rep.add("P~^h rows = Pi~ " + tag, rows_all_equal_to(matpow(Pt, h), pit.weights));
            rep.add("P^{h+1} = P^h " + tag, matpow(P, h + 1) == matpow(P, h));
            rep.add("psi intertwining " + tag, verify_intertwining(Pt, lumping_psi_all(h + 1), P));
            if (h <= 4) {
                const auto Ph = build_doubly_enriched(h, zs);
                const auto pih = stationary_doubly_enriched(h, zs);
                rep.add("doubly enriched closed form = solver " + tag, detail::solver_agrees(Ph, pih));
                rep.add("P^^h rows = Pi^ " + tag, rows_all_equal_to(matpow(Ph, h), pih.weights));
                rep.add("phi intertwining " + tag, verify_intertwining(Ph, phi_map(h, h + 1), P));
                rep.add("phi~ intertwining " + tag, verify_intertwining(Ph, phi_tilde_map(h, h + 1), Pt));
            }
            // Unnormalized letters: total mass (z_1 + .. + z_L)^h.
            std::vector<Rational> loose;
            for (const auto& z : zs)
                loose.push_back(z * 2);
            rep.add("total mass (sum z)^h " + tag, annihilation_weights(h, loose).total() == power(Rational(2), static_cast<unsigned>(h)) &&
                                                      enriched_annihilation_weights(h + 1, loose).total() == power(Rational(2), static_cast<unsigned>(h)));
        }
        if (h >= 2) {
            const auto xs = random_simplex(2, rng);
            rep.add("negative control: generic MJMC P^h rows differ h=" + std::to_string(h), !rows_all_equal(matpow(build_mjmc(h, 1, xs), h)));
        }
    }
    return rep;
}

inline VerifyReport verify_infinite(int max_l)
{
    VerifyReport rep{"infinite", {}};
    for (const auto& q : {Rational(1, 4), Rational(1, 3), Rational(1, 2)}) {
        const auto params = TailParams<Rational>::geometric(q);
        const auto qs = to_string(q);
        for (int l = 1; l <= max_l; ++l)
            rep.add("UMJMC balance q=" + qs + ",l=" + std::to_string(l), verify_umjmc_invariance(l, params, 5));
        rep.add("IMJMC balance q=" + qs, verify_imjmc_invariance(params, 7));
        for (int l = 1; l <= max_l; ++l) {
            const auto mass = umjmc_mass(l, params, 1e-10);
            bool monotone = true;
            Rational prev = 0;
            for (int k = 0; k <= mass.cutoff; ++k) {
                const auto z = z_mjmc(k + l, k, params.truncated(k));
                monotone = monotone && z >= prev;
                prev = z;
            }
            const double gap = Rational(geometric_umjmc_mass(l, q) - prev).get_d();
            rep.add("Z_{k+l,k} increases to h_l(y) q=" + qs + ",l=" + std::to_string(l),
                    monotone && gap >= 0 && gap <= mass.bound && mass.bound <= 1e-9);
        }
    }
    const std::vector<Rational> xs{Rational(1, 2), Rational(1, 3), Rational(1, 6)};
    for (int t = 0; t <= 3; ++t) {
        for (const auto& nu : {IntegerPartition(), IntegerPartition({1}), IntegerPartition({2, 1})}) {
            const int need = static_cast<int>(nu.length()) + t;
            rep.add("l-independence t=" + std::to_string(t) + ",nu=" + nu.str(),
                    verify_l_to_infinity<Rational>(t, nu, {need, need + 1, need + 3, std::nullopt}, xs));
        }
    }
    return rep;
}

inline VerifyReport verify_linalg()
{
    VerifyReport rep{"linalg", {}};
    const std::vector<Rational> xs{0, 0, 1};
    const auto P = build_mjmc(4, 2, xs, BuildOptions{true, false});
    const auto r = solve_stationary(P);
    const auto* nu = std::get_if<NonUniqueStationary>(&r);
    rep.add("x_0 = x_1 = 0 reports non-uniqueness", nu && nu->closed.size() >= 2);
    const std::vector<Rational> ys{Rational(1, 2), Rational(1, 4), Rational(1, 4)};
    const auto Q = build_mjmc(4, 2, ys);
    const auto s = solve_stationary(Q);
    const auto* d = std::get_if<Distribution<Rational>>(&s);
    rep.add("solver output is stationary and normalized", d && Q.left_apply(d->weights) == d->weights && d->total() == 1);
    rep.add("P^0 is the identity", matpow(Q, 0) == RationalMatrix<Rational>::identity(Q.size()));
    return rep;
}

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"combinat", "symfun", "mjmc", "enriched", "adddrop", "annihilation", "infinite", "linalg"};
    return names;
}

/// Runs one suite; h bounds the word length (H = h+1 for set partitions).
inline VerifyReport run_suite(const std::string& name, int h)
{
    if (name == "combinat")
        return verify_combinat(h);
    if (name == "symfun")
        return verify_symfun(h);
    if (name == "mjmc")
        return verify_mjmc(h);
    if (name == "enriched")
        return verify_enriched(h + 1);
    if (name == "adddrop")
        return verify_adddrop(h);
    if (name == "annihilation")
        return verify_annihilation(h);
    if (name == "infinite")
        return verify_infinite(std::max(1, std::min(h, 3)));
    if (name == "linalg")
        return verify_linalg();
    throw DomainError("unknown suite '" + name + "'");
}

} // namespace juggling
