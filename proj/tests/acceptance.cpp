// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "juggling/juggling.hpp"
#include "partition_oracles.hpp"
#include "worked_examples.hpp"

using namespace juggling;
using examples::R;

namespace {

struct Tally {
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_failure;

    void require(bool ok, const std::string& what)
    {
        ++checks;
        if (!ok && failures++ == 0)
            first_failure = what;
    }
};

std::vector<Rational> simplex(std::size_t n, std::mt19937_64& rng)
{
    std::vector<Rational> v;
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        v.push_back(R(static_cast<long>(rng() % 11) + 1));
        total += v.back();
    }
    for (auto& x : v)
        x /= total;
    return v;
}

std::string hk(int h, int k)
{
    return "(" + std::to_string(h) + "," + std::to_string(k) + ")";
}

bool is_unique(const std::variant<Distribution<Rational>, NonUniqueStationary>& r, const Distribution<Rational>& want)
{
    return std::holds_alternative<Distribution<Rational>>(r) && std::get<Distribution<Rational>>(r) == want;
}

// Independent oracles for the normalization identities.

/// h_l by enumerating multisets of indices.
Rational oracle_h(int l, const std::vector<Rational>& ys)
{
    std::function<Rational(int, std::size_t)> rec = [&](int left, std::size_t from) -> Rational {
        if (left == 0)
            return 1;
        Rational s = 0;
        for (std::size_t i = from; i < ys.size(); ++i)
            s += ys[i] * rec(left - 1, i);
        return s;
    };
    return l < 0 ? Rational(0) : rec(l, 0);
}

/// S(n,k) by S(n,k) = k S(n-1,k) + S(n-1,k-1).
Rational oracle_stirling(int n, int k)
{
    std::vector<std::vector<Rational>> s(static_cast<std::size_t>(n) + 1, std::vector<Rational>(static_cast<std::size_t>(k) + 1, Rational(0)));
    s[0][0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= std::min(i, k); ++j)
            s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
    return s[n][k];
}

/// S_q(n,k) = h_{n-k}([1]_q, .., [k]_q).
Rational oracle_q_stirling(int n, int k, const Rational& q)
{
    if (k == 0)
        return n == 0 ? 1 : 0;
    std::vector<Rational> ints;
    Rational acc = 0, p = 1;
    for (int j = 1; j <= k; ++j) {
        acc += p;
        p *= q;
        ints.push_back(acc);
    }
    return oracle_h(n - k, ints);
}

/// Sum of q^{inversions} over 0/1 words of length n with k ones.
Rational oracle_q_binomial(int n, int k, const Rational& q)
{
    Rational total = 0;
    for (unsigned m = 0; m < (1u << n); ++m) {
        if (__builtin_popcount(m) != k)
            continue;
        unsigned inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                inv += ((m >> i) & 1u) && !((m >> j) & 1u);
        total += power(q, inv);
    }
    return total;
}

const std::vector<Rational> kFiveQs{R(1, 2), R(2, 3), R(3), R(-1, 5), R(7, 4)};

// ---------------------------------------------------------------------------

Tally oracle_equivalence()
{
    Tally t;
    std::mt19937_64 rng(101);
    for (int h = 1; h <= 7; ++h)
        for (int k = 1; k <= h; ++k)
            for (int trial = 0; trial < 3; ++trial) {
                const auto xs = simplex(static_cast<std::size_t>(k) + 1, rng);
                const auto kernel = build_mjmc(h, k, xs);
                t.require(kernel.stochastic(), "stochastic " + hk(h, k));
                t.require(is_unique(solve_stationary(kernel), stationary_mjmc(h, k, xs)), "closed form vs solver " + hk(h, k));
            }
    return t;
}

Tally enriched_lumping()
{
    Tally t;
    std::mt19937_64 rng(202);
    for (int H = 1; H <= 6; ++H)
        for (int K = 1; K <= H; ++K) {
            const auto xs = simplex(static_cast<std::size_t>(K), rng);
            const auto tilde = build_enriched(H, K, xs);
            const auto base = build_mjmc(H - 1, K - 1, xs);
            const auto Psi = lumping_psi(H, K);
            const auto pit = stationary_enriched(H, K, xs);
            t.require(verify_intertwining(tilde, Psi, base), "P~ Psi = Psi P " + hk(H, K));
            t.require(is_unique(solve_stationary(tilde), pit), "enriched closed form vs solver " + hk(H, K));
            t.require(Psi.push_forward(pit).weights == stationary_mjmc(H - 1, K - 1, xs).weights, "pi = pi~ Psi " + hk(H, K));
            std::map<std::string, Rational> fiber;
            for (const auto& s : enumerate_set_partitions(H, K))
                fiber[psi(s).str()] += enriched_weight(s, xs);
            const auto w = mjmc_weights(H - 1, K - 1, xs);
            for (std::size_t i = 0; i < w.size(); ++i)
                t.require(fiber[w.labels[i]] == w.weights[i], "fiber sum " + w.labels[i] + " " + hk(H, K));
        }
    return t;
}

Tally normalization()
{
    Tally t;
    std::mt19937_64 rng(303);
    for (int h = 0; h <= 8; ++h)
        for (int k = 0; k <= h; ++k) {
            std::vector<Rational> xs;
            for (int i = 0; i <= k; ++i)
                xs.push_back(R(static_cast<long>(rng() % 9) + 1, static_cast<long>(rng() % 7) + 1));
            const auto Z = z_mjmc(h, k, xs);
            t.require(Z == z_mjmc_word_sum(h, k, xs), "word sum " + hk(h, k));
            t.require(Z == z_mjmc_by_first_recursion<Rational>(h, k, xs), "first-letter recursion " + hk(h, k));
            t.require(Z == z_mjmc_by_last_recursion<Rational>(h, k, xs), "last-letter recursion " + hk(h, k));
            t.require(Z == oracle_h(h - k, ParamVector<Rational>{xs}.tails()), "h_l of tails " + hk(h, k));

            for (const auto& q : kFiveQs) {
                for (const auto& id : z_specializations(h, k, q))
                    t.require(id.holds(), id.name + " " + hk(h, k));
                std::vector<Rational> ones(static_cast<std::size_t>(k) + 1, R(1)), desc, asc;
                for (int i = 0; i <= k; ++i) {
                    desc.push_back(power(q, static_cast<unsigned>(k - i)));
                    asc.push_back(power(q, static_cast<unsigned>(i)));
                }
                t.require(z_mjmc(h, k, ones) == oracle_stirling(h + 1, k + 1), "Stirling oracle " + hk(h, k));
                t.require(z_mjmc(h, k, desc) == oracle_q_stirling(h + 1, k + 1, q), "q-Stirling oracle " + hk(h, k));
                t.require(z_mjmc(h, k, asc) == power(q, static_cast<unsigned>(k * (h - k))) * oracle_q_stirling(h + 1, k + 1, 1 / q),
                          "reversed q-Stirling oracle " + hk(h, k));
                t.require(z_mjmc(h, k, truncated_geometric_params(k, q)) == oracle_q_binomial(h, k, q), "q-binomial oracle " + hk(h, k));
            }
        }
    const std::vector<Rational> ones{R(1), R(1), R(1)};
    t.require(z_mjmc(4, 2, ones) == 25, "Z_{4,2}(1,1,1) = 25");
    t.require(oracle_stirling(5, 3) == 25, "S(5,3) = 25");
    return t;
}

Tally worked_examples()
{
    Tally t;
    for (const auto& c : examples::all())
        t.require(c.ok, c.what);
    return t;
}

Tally mahonian()
{
    Tally t;
    for (const auto& q : kFiveQs)
        for (int H = 1; H <= 8; ++H)
            for (int K = 1; K <= H; ++K) {
                Rational sum = 0;
                for (const auto& s : enumerate_set_partitions(H, K))
                    sum += power(q, static_cast<unsigned>(mahonian_N(s)));
                t.require(sum == q_stirling2(H, K, q), "sum q^N vs q_stirling2 " + hk(H, K));
                t.require(sum == oracle_q_stirling(H, K, q), "sum q^N vs q-Stirling oracle " + hk(H, K));
            }
    return t;
}

Tally strong_stationary_time()
{
    Tally t;
    std::mt19937_64 rng(606);
    for (int h = 1; h <= 4; ++h)
        for (int trial = 0; trial < 3; ++trial) {
            const auto zs = simplex(static_cast<std::size_t>(h) + 1, rng);
            t.require(rows_all_equal_to(matpow(build_annihilation(h, zs), h), stationary_annihilation(h, zs).weights), "P^h h=" + std::to_string(h));
            t.require(rows_all_equal_to(matpow(build_enriched_annihilation(h + 1, zs), h), stationary_enriched_annihilation(h + 1, zs).weights),
                      "P~^h h=" + std::to_string(h));
            t.require(rows_all_equal_to(matpow(build_doubly_enriched(h, zs), h), stationary_doubly_enriched(h, zs).weights),
                      "P^^h h=" + std::to_string(h));
        }
    const std::vector<Rational> xs{R(1, 2), R(1, 4), R(1, 4)};
    t.require(!rows_all_equal(matpow(build_mjmc(4, 2, xs), 4)), "negative control: MJMC (4,2) P^4 rows differ");
    return t;
}

Tally infinite_extensions()
{
    using namespace juggling::oracles;
    Tally t;
    for (const auto& q : {R(1, 4), R(1, 3), R(1, 2)}) {
        const auto params = TailParams<Rational>::geometric(q);
        const std::string qs = " q=" + to_string(q);
        for (int l = 0; l <= 3; ++l) {
            const std::string ls = " l=" + std::to_string(l);
            t.require(verify_umjmc_invariance(l, params, 6), "UMJMC balance" + ls + qs);
            const int cap = 5;
            std::map<std::vector<int>, Rational> inflow;
            for (const auto& mu : oracle_box(cap + 1, l))
                for (const auto& [nu, i] : oracle_step(mu, cap))
                    inflow[nu] += weight(mu, q) * (i < 0 ? Rational(1) : params.x(i));
            for (const auto& lambda : oracle_box(cap, l))
                t.require(inflow[lambda] == weight(lambda, q), "UMJMC oracle balance" + ls + qs);

            const auto r = umjmc_mass(l, params, 1e-9);
            Rational exact = 1;
            for (int i = 1; i <= l; ++i)
                exact /= 1 - power(q, static_cast<unsigned>(i));
            const Rational gap = exact - r.value;
            t.require(r.converged && r.bound <= 1e-9, "mass bound <= 1e-9" + ls + qs);
            t.require(r.value == z_mjmc(r.cutoff + l, r.cutoff, params.truncated(r.cutoff)), "mass is Z_{k+l,k}" + ls + qs);
            t.require(gap >= 0 && gap.get_d() <= r.bound, "mass within bound" + ls + qs);
            Rational prev = 0;
            for (int k = 0; k <= r.cutoff; ++k) {
                const auto z = z_mjmc(k + l, k, params.truncated(k));
                t.require(prev <= z && z <= exact, "Z_{k+l,k} nondecreasing below limit" + ls + qs);
                prev = z;
            }
        }

        t.require(verify_imjmc_invariance(params, 5), "IMJMC balance" + qs);
        const int N = 12;
        const auto mus = oracle_partitions(N);
        for (const auto& lambda : oracle_partitions(4)) {
            const IntegerPartition target(lambda);
            Rational in = 0;
            for (const auto& mu : mus)
                for (int i = 0; i <= 4; ++i)
                    if (imjmc_step(IntegerPartition(mu), i) == target)
                        in += weight(mu, q) * params.x(i);
            std::vector<int> lifted;
            int size = 0;
            for (int p : lambda) {
                lifted.push_back(p + 1);
                size += p + 1;
            }
            const Rational y1 = params.y(1);
            const Rational missing = weight(lifted, q) * params.x(0) * power(y1, static_cast<unsigned>(N - size + 1)) / (1 - y1);
            t.require(in + missing == weight(lambda, q), "IMJMC oracle balance " + target.str() + qs);
        }
    }

    const std::vector<Rational> xs{R(1, 2), R(1, 4), R(1, 8), R(1, 8)};
    for (int steps = 0; steps <= 3; ++steps)
        for (const auto& nu : enumerate_partitions_up_to(3)) {
            const int need = static_cast<int>(nu.length()) + steps;
            t.require(verify_l_to_infinity<Rational>(steps, nu, {need, need + 1, need + 3, std::nullopt}, xs),
                      "l-independence t=" + std::to_string(steps) + " nu=" + nu.str());
        }
    return t;
}

Tally monte_carlo()
{
    Tally t;
    const std::vector<Rational> xs{R(1, 2), R(1, 4), R(1, 4)};
    const auto k = build_mjmc(4, 2, xs);
    SimConfig cfg;
    cfg.seed = 8;
    cfg.replicas = 1000;
    cfg.steps = 999;
    cfg.burn_in = 100;
    const auto e = run(k, cfg);
    t.require(e.total == 1000000, "MJMC sample count");
    const double bound = 3.0 * std::sqrt(6.0 / 1e6);
    const double tv = tv_distance(e, stationary_mjmc(4, 2, xs));
    t.require(tv < bound, "MJMC TV " + std::to_string(tv) + " < " + std::to_string(bound));

    const std::vector<Rational> zs{R(1, 2), R(1, 4), R(1, 8), R(1, 8)};
    const auto a = build_annihilation(3, zs);
    const auto rep = strong_stationary_check(a, stationary_annihilation(3, zs), 3, 100000, 9);
    t.require(rep.exact_rows_match, "annihilation P^3 exact");
    for (const auto& s : rep.starts)
        t.require(s.tv < rep.tv_bound, "annihilation step-3 TV from " + s.start + " " + std::to_string(s.tv) + " < " + std::to_string(rep.tv_bound));
    return t;
}

Tally reducibility()
{
    Tally t;
    const std::vector<Rational> xs{R(0), R(0), R(1)};
    const auto k = build_mjmc(4, 2, xs, BuildOptions{true, false});
    const auto r = solve_stationary(k);
    t.require(std::holds_alternative<NonUniqueStationary>(r), "NonUnique report");
    if (std::holds_alternative<NonUniqueStationary>(r))
        t.require(std::get<NonUniqueStationary>(r).closed.size() >= 2, ">= 2 closed classes in report");
    t.require(closed_classes(k).size() >= 2, ">= 2 closed classes");
    bool threw = false;
    try {
        build_mjmc(4, 2, xs);
    } catch (const DomainError&) {
        threw = true;
    }
    t.require(threw, "default build rejects reducible parameters");
    return t;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Tally()>>> criteria{
        {"AC1 closed-form stationary law equals solver, 1<=k<=h<=7", oracle_equivalence},
        {"AC2 enriched chain: intertwining, solver, lumping, fiber sums, H<=6", enriched_lumping},
        {"AC3 normalization identities and specializations, h<=8", normalization},
        {"AC4 worked examples bit-exact", worked_examples},
        {"AC5 Mahonian statistic equals q-Stirling, H<=8", mahonian},
        {"AC6 exact stationarity after h steps, h<=4", strong_stationary_time},
        {"AC7 infinite extensions: balance, mass bounds, l-independence", infinite_extensions},
        {"AC8 Monte Carlo TV consistency", monte_carlo},
        {"AC9 reducibility diagnostics", reducibility},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Tally t;
        std::string error;
        try {
            t = fn();
        } catch (const std::exception& ex) {
            error = ex.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool ok = error.empty() && t.failures == 0 && t.checks > 0;
        failed += !ok;
        std::printf("%s %s [%zu checks, %.2fs]", ok ? "PASS" : "FAIL", name.c_str(), t.checks, secs);
        if (!error.empty())
            std::printf(" exception: %s", error.c_str());
        else if (t.failures)
            std::printf(" %zu failed, first: %s", t.failures, t.first_failure.c_str());
        std::printf("\n");
    }
    return failed ? 1 : 0;
}
