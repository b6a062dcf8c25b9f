#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "betti.hpp"
#include "edge_ideals.hpp"
#include "expected.hpp"
#include "graph.hpp"
#include "isomorphism.hpp"
#include "version.hpp"

namespace circreg {

enum class CheckStatus { pass, fail, skipped };

inline const char* to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::fail:
        return "fail";
    default:
        return "skipped";
    }
}

struct CheckRecord {
    std::string check;
    std::vector<std::pair<std::string, std::string>> params; // in canonical order
    std::string expected;
    std::string computed;
    std::string formula_case;
    CheckStatus status = CheckStatus::pass;
    std::string reason;
    double millis = 0;

    std::string params_text() const {
        std::string s;
        for (std::size_t k = 0; k < params.size(); ++k)
            s += (k ? " " : "") + params[k].first + "=" + params[k].second;
        return s;
    }
};

struct VerifyConfig {
    std::uint64_t seed = 1;
    std::uint32_t prime = kDefaultPrime;
    std::uint32_t check_prime = kCheckPrime;
    std::size_t lattice_limit = kDefaultLatticeLimit;
    bool extended = false;

    std::size_t max_n = 7;
    std::size_t max_t = 3;
    /// Power and symbolic-power runs need 2n * t <= this (30 with `extended`).
    std::size_t work_budget = 20;

    std::optional<std::size_t> n, a, t;
    std::size_t max_len = 3;
    bool exhaustive = false;
    std::size_t tuple_samples = 100;
    std::size_t repeated_samples = 100;
    std::size_t monomial_samples = 200;
    std::size_t intermediate_samples = 10;

    std::size_t budget() const { return extended ? std::max<std::size_t>(work_budget, 30) : work_budget; }
};

struct VerificationReport {
    std::string suite;
    std::string version = kVersion;
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> primes;
    std::size_t lattice_limit = 0;
    bool extended = false;
    std::vector<CheckRecord> records;

    std::size_t count(CheckStatus s) const {
        return static_cast<std::size_t>(
            std::count_if(records.begin(), records.end(), [&](const CheckRecord& r) { return r.status == s; }));
    }

    /// 0 all pass, 1 any failure, 3 only capacity skips.
    int exit_code() const {
        if (count(CheckStatus::fail) != 0)
            return 1;
        return count(CheckStatus::skipped) != 0 ? 3 : 0;
    }
};

/// Deterministic child seed for a named task.
inline std::uint64_t derive_seed(std::uint64_t root, const std::string& tag) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : tag)
        h = (h ^ c) * 1099511628211ULL;
    std::uint64_t z = root ^ h;
    // splitmix64 finalizer
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * Runs checks and accumulates their records. Regularity results are cached
 * per (ideal, prime) for the lifetime of the verifier.
 */
class Verifier {
  public:
    explicit Verifier(VerifyConfig cfg, std::string suite = "custom") : cfg_(std::move(cfg)) {
        report_.suite = std::move(suite);
        report_.seed = cfg_.seed;
        report_.primes = {cfg_.prime, cfg_.check_prime};
        report_.lattice_limit = cfg_.lattice_limit;
        report_.extended = cfg_.extended;
    }

    const VerifyConfig& config() const noexcept { return cfg_; }
    const VerificationReport& report() const noexcept { return report_; }

    /// Report with records in canonical order (check name, then parameters).
    VerificationReport finish() const {
        VerificationReport r = report_;
        std::stable_sort(r.records.begin(), r.records.end(), [](const CheckRecord& x, const CheckRecord& y) {
            return std::tie(x.check, x.params) < std::tie(y.check, y.params);
        });
        return r;
    }

    int reg(const MonomialIdeal& I, std::uint32_t p) {
        auto key = std::make_pair(serialize(I), p);
        if (auto it = reg_cache_.find(key); it != reg_cache_.end())
            return it->second;
        RegularityOptions opt;
        opt.prime = p;
        opt.lattice_limit = cfg_.lattice_limit;
        const int r = regularity(I, opt);
        reg_cache_.emplace(std::move(key), r);
        return r;
    }

    const MonomialIdeal& power_of(const Graph& g, unsigned t) {
        auto key = std::make_pair(serialize(g), t);
        auto it = power_cache_.find(key);
        if (it == power_cache_.end())
            it = power_cache_.emplace(std::move(key), power(edge_ideal(g), t)).first;
        return it->second;
    }

    /// Runs `body` as one record; capacity errors become SKIPPED.
    void run(CheckRecord rec, const std::function<void(CheckRecord&)>& body) {
        const auto start = std::chrono::steady_clock::now();
        try {
            body(rec);
        } catch (const capacity_error& e) {
            rec.status = CheckStatus::skipped;
            rec.reason = e.what();
        } catch (const verification_error& e) {
            rec.status = CheckStatus::fail;
            rec.reason = e.what();
        }
        rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        report_.records.push_back(std::move(rec));
    }

    // Individual checks. Graph parameters follow C_{2n}(a, n).

    void base(std::size_t n, std::size_t a) {
        const auto ev = expected_reg_base(n, a);
        run(make("reg-base", {{"n", n}, {"a", a}}, ev), [&](CheckRecord& r) {
            const int got = reg(edge_ideal(cubic_circulant(n, a)), cfg_.prime);
            settle(r, got, got == ev.value);
        });
        stability("betti-stability", edge_ideal(cubic_circulant(n, a)), {{"n", n}, {"a", a}, {"t", 1}});
    }

    void power_reg(std::size_t n, std::size_t a, std::size_t t) {
        const Graph g = cubic_circulant(n, a);
        const auto ev = expected_reg_power(n, a, t);
        std::optional<int> got;
        run(make("reg-power", {{"n", n}, {"a", a}, {"t", t}}, ev), [&](CheckRecord& r) {
            got = reg(power_of(g, static_cast<unsigned>(t)), cfg_.prime);
            settle(r, *got, *got == ev.value);
        });
        lower_bound("lower-bound-power", n, a, t, got);
        stability("betti-stability", power_of(g, static_cast<unsigned>(t)), {{"n", n}, {"a", a}, {"t", t}});
    }

    void symbolic(std::size_t n, std::size_t a, std::size_t t) {
        const auto ev = expected_reg_symbolic(n, a, t);
        std::optional<int> got;
        run(make("reg-symbolic", {{"n", n}, {"a", a}, {"t", t}}, ev), [&](CheckRecord& r) {
            got = reg(symbolic_power(cubic_circulant(n, a), static_cast<unsigned>(t)), cfg_.prime);
            settle(r, *got, *got == ev.value);
        });
        lower_bound("lower-bound-symbolic", n, a, t, got);
        run(make_plain("betti-stability-symbolic", {{"n", n}, {"a", a}, {"t", t}}), [&](CheckRecord& r) {
            stability_body(r, symbolic_power(cubic_circulant(n, a), static_cast<unsigned>(t)));
        });
    }

    /// Colon identity I^t : x^e = I(G_e) plus the loop and radical checks on one tuple set.
    void banerjee(std::size_t n, std::size_t a, std::size_t max_len, bool exhaustive) {
        const Graph g = cubic_circulant(n, a);
        std::vector<EdgeTuple> tuples;
        if (exhaustive) {
            for (std::size_t len = 1; len <= max_len; ++len)
                for (auto& e : all_tuples(g, len))
                    tuples.push_back(std::move(e));
        } else {
            std::mt19937_64 rng(derive_seed(cfg_.seed, "banerjee/" + std::to_string(n) + "/" + std::to_string(a)));
            for (std::size_t k = 0; k < cfg_.tuple_samples; ++k)
                tuples.push_back(random_tuple(g, 1 + rng() % max_len, rng));
        }
        const std::vector<std::pair<std::string, std::size_t>> params = {
            {"n", n}, {"a", a}, {"len", max_len}, {"exhaustive", static_cast<std::size_t>(exhaustive)}, {"tuples", tuples.size()}};
        const long im = expected_im(n).value;

        std::vector<Graph> ge;
        for (const auto& e : tuples)
            ge.push_back(even_connection_graph(g, e));
        run(make_plain("banerjee", params), [&](CheckRecord& r) {
            std::size_t fails = 0;
            std::string first;
            for (std::size_t k = 0; k < tuples.size(); ++k) {
                const auto lhs = colon_by_tuple(power_of(g, static_cast<unsigned>(tuples[k].size() + 1)), tuples[k]);
                if (lhs != edge_ideal(ge[k]) && fails++ == 0)
                    first = tuples[k].to_string();
            }
            count_failures(r, fails, tuples.size(), first);
        });
        run(make_plain("colon-reg-bound", params), [&](CheckRecord& r) {
            r.expected = "<= " + std::to_string(im + 1);
            r.formula_case = "im+1";
            int worst = 0;
            std::string arg;
            for (std::size_t k = 0; k < tuples.size(); ++k) {
                const int v = reg(edge_ideal(ge[k]), cfg_.prime);
                if (v > worst) {
                    worst = v;
                    arg = tuples[k].to_string();
                }
            }
            r.computed = "max " + std::to_string(worst);
            r.status = worst <= im + 1 ? CheckStatus::pass : CheckStatus::fail;
            if (r.status == CheckStatus::fail)
                r.reason = "attained at " + arg;
        });
        run(make_plain("loop-dominance", params), [&](CheckRecord& r) {
            std::size_t fails = 0;
            std::string first;
            for (std::size_t k = 0; k < tuples.size(); ++k)
                if (!loop_dominance_check(ge[k]) && fails++ == 0)
                    first = tuples[k].to_string();
            count_failures(r, fails, tuples.size(), first);
        });
        // Repeats are dropped first; the colon ideal only sees distinct edges.
        run(make_plain("radical-splitting", params), [&](CheckRecord& r) {
            std::size_t fails = 0;
            std::string first;
            for (const auto& e : tuples)
                if (!radical_splitting_check(g, e.deduplicated()) && fails++ == 0)
                    first = e.to_string();
            count_failures(r, fails, tuples.size(), first);
        });
    }

    /// I^t : x^e equals I^(s+1) : (e_1 ... e_s) on tuples with repeated edges.
    void multiplicity(std::size_t n, std::size_t a) {
        const Graph g = cubic_circulant(n, a);
        std::mt19937_64 rng(derive_seed(cfg_.seed, "multiplicity/" + std::to_string(n) + "/" + std::to_string(a)));
        std::vector<EdgeTuple> tuples;
        for (std::size_t k = 0; k < cfg_.repeated_samples; ++k) {
            auto base = random_tuple(g, 1 + rng() % 2, rng).edges();
            base.push_back(base[rng() % base.size()]);
            std::shuffle(base.begin(), base.end(), rng);
            tuples.emplace_back(g, std::move(base));
        }
        run(make_plain("multiplicity-reduction", {{"n", n}, {"a", a}, {"tuples", tuples.size()}}),
            [&](CheckRecord& r) {
                std::size_t fails = 0;
                std::string first;
                for (const auto& e : tuples) {
                    const auto full = colon_by_tuple(power_of(g, static_cast<unsigned>(e.size() + 1)), e);
                    const auto d = e.deduplicated();
                    const auto reduced = colon_by_tuple(power_of(g, static_cast<unsigned>(d.size() + 1)), d);
                    if (full != reduced && fails++ == 0)
                        first = e.to_string();
                }
                count_failures(r, fails, tuples.size(), first);
            });
    }

    /// sqrt(I^t : x^b) == sqrt(I^(t) : x^b) for seeded x^b outside I^(t), exponents <= 2.
    void radical_colon(std::size_t n, std::size_t a, std::size_t t) {
        const Graph g = cubic_circulant(n, a);
        run(make_plain("radical-colon", {{"n", n}, {"a", a}, {"t", t}, {"samples", cfg_.monomial_samples}}),
            [&](CheckRecord& r) {
                const auto& It = power_of(g, static_cast<unsigned>(t));
                const auto sym = symbolic_power(g, static_cast<unsigned>(t));
                std::mt19937_64 rng(derive_seed(cfg_.seed, "radical-colon/" + std::to_string(n) + "/" +
                                                               std::to_string(a) + "/" + std::to_string(t)));
                std::size_t fails = 0, done = 0, draws = 0;
                std::string first;
                std::vector<int> ex(2 * n);
                while (done < cfg_.monomial_samples) {
                    if (++draws > 1000 * cfg_.monomial_samples)
                        throw capacity_error("radical-colon: too few monomials outside I^(t)");
                    for (auto& x : ex)
                        x = static_cast<int>(rng() % 3);
                    const Monomial m(2 * n, ex);
                    const auto ok = radical_colon_check(It, sym, m);
                    if (!ok)
                        continue;
                    ++done;
                    if (!*ok && fails++ == 0)
                        first = m.to_string();
                }
                count_failures(r, fails, done, first);
            });
    }

    /// reg(L) for ideals I^t <= L <= I^(t): every subset when exhaustive, else seeded subsets.
    void intermediate(std::size_t n, std::size_t a, std::size_t t, bool exhaustive) {
        const Graph g = cubic_circulant(n, a);
        const auto ev = expected_reg_power(n, a, t);
        run(make("intermediate", {{"n", n}, {"a", a}, {"t", t}, {"exhaustive", static_cast<std::size_t>(exhaustive)}}, ev),
            [&](CheckRecord& r) {
                const auto pool = extra_symbolic_generators(g, static_cast<unsigned>(t));
                std::vector<std::vector<Monomial>> subsets;
                if (exhaustive) {
                    if (pool.size() > 16)
                        throw capacity_error("intermediate: " + std::to_string(pool.size()) +
                                             " extra generators is too many for exhaustive search");
                    for (std::uint32_t mask = 0; mask < (1U << pool.size()); ++mask) {
                        std::vector<Monomial> s;
                        for (std::size_t k = 0; k < pool.size(); ++k)
                            if ((mask >> k) & 1U)
                                s.push_back(pool[k]);
                        subsets.push_back(std::move(s));
                    }
                } else {
                    for (std::size_t k = 0; k < cfg_.intermediate_samples; ++k)
                        subsets.push_back(random_selector(
                            pool, derive_seed(cfg_.seed, "intermediate/" + std::to_string(n) + "/" + std::to_string(a) +
                                                             "/" + std::to_string(t) + "/" + std::to_string(k))));
                }
                std::set<int> seen;
                for (const auto& s : subsets)
                    seen.insert(reg(intermediate_ideal(g, static_cast<unsigned>(t), s), cfg_.prime));
                std::string values;
                for (int v : seen)
                    values += (values.empty() ? "" : ",") + std::to_string(v);
                r.computed = values + " over " + std::to_string(subsets.size()) + " ideals (" +
                             std::to_string(pool.size()) + " extra generators)";
                r.status = seen.size() == 1 && *seen.begin() == ev.value ? CheckStatus::pass : CheckStatus::fail;
            });
    }

    void decompose(std::size_t n, std::size_t a) {
        run(make_plain("decompose", {{"n", n}, {"a", a}}), [&](CheckRecord& r) {
            const auto rep = decompose_cubic(n, a);
            r.expected = std::to_string(rep.count) + " x " + rep.model_name();
            r.computed = std::to_string(rep.components.size()) + " isomorphic components";
            r.status = CheckStatus::pass;
        });
    }

    /// reg I(C_{2n}(a, n))^t for any a, connected or not.
    void general(std::size_t n, std::size_t a, std::size_t t) {
        const auto ev = expected_reg_general(n, a, t);
        run(make("reg-general", {{"n", n}, {"a", a}, {"t", t}}, ev), [&](CheckRecord& r) {
            const int got = reg(power_of(cubic_circulant(n, a), static_cast<unsigned>(t)), cfg_.prime);
            settle(r, got, got == ev.value);
        });
    }

    /// Power and symbolic power of k disjoint copies of C_{2n}(a, n).
    void disjoint(std::size_t k, std::size_t n, std::size_t a, std::size_t t) {
        const auto ev = expected_reg_disjoint(k, n, a, t);
        const Graph g = disjoint_copies(cubic_circulant(n, a), k);
        run(make("disjoint-union-power", {{"k", k}, {"n", n}, {"a", a}, {"t", t}}, ev), [&](CheckRecord& r) {
            const int got = reg(power_of(g, static_cast<unsigned>(t)), cfg_.prime);
            settle(r, got, got == ev.value);
        });
        run(make("disjoint-union-symbolic", {{"k", k}, {"n", n}, {"a", a}, {"t", t}}, ev), [&](CheckRecord& r) {
            const int got = reg(symbolic_power(g, static_cast<unsigned>(t)), cfg_.prime);
            settle(r, got, got == ev.value);
        });
    }

  private:
    using Params = std::vector<std::pair<std::string, std::size_t>>;

    static CheckRecord make_plain(std::string check, const Params& params) {
        CheckRecord r;
        r.check = std::move(check);
        for (const auto& [k, v] : params)
            r.params.emplace_back(k, std::to_string(v));
        return r;
    }

    static CheckRecord make(std::string check, const Params& params, const ExpectedValue& ev) {
        CheckRecord r = make_plain(std::move(check), params);
        r.expected = std::to_string(ev.value);
        r.formula_case = ev.formula_case;
        return r;
    }

    static void settle(CheckRecord& r, long got, bool ok) {
        r.computed = std::to_string(got);
        r.status = ok ? CheckStatus::pass : CheckStatus::fail;
    }

    static void count_failures(CheckRecord& r, std::size_t fails, std::size_t total, const std::string& first) {
        r.expected = "0 failures";
        r.computed = std::to_string(fails) + " failures / " + std::to_string(total);
        r.status = fails == 0 ? CheckStatus::pass : CheckStatus::fail;
        if (fails != 0)
            r.reason = "first at " + first;
    }

    void lower_bound(const std::string& check, std::size_t n, std::size_t a, std::size_t t, std::optional<int> got) {
        const long bound = static_cast<long>(2 * t - 1 + n / 2);
        run(make_plain(check, {{"n", n}, {"a", a}, {"t", t}}), [&](CheckRecord& r) {
            r.expected = ">= " + std::to_string(bound);
            r.formula_case = "2t-1+im";
            if (!got) {
                r.status = CheckStatus::skipped;
                r.reason = "regularity not computed";
                return;
            }
            settle(r, *got, *got >= bound);
        });
    }

    /// Full Betti tables at both primes agree and pass the self-checks.
    void stability_body(CheckRecord& r, const MonomialIdeal& I) {
        BettiOptions opt;
        opt.lattice_limit = cfg_.lattice_limit;
        opt.prime = cfg_.prime;
        const auto t1 = betti_table(I, opt);
        opt.prime = cfg_.check_prime;
        const auto t2 = betti_table(I, opt);
        auto issues = betti_self_check(I, t1, cfg_.lattice_limit);
        const auto more = betti_self_check(I, t2, cfg_.lattice_limit);
        issues.insert(issues.end(), more.begin(), more.end());
        r.expected = "equal tables, 0 discrepancies";
        r.computed = std::string(t1.same_ranks(t2) ? "equal" : "different") + " tables, " +
                     std::to_string(issues.size()) + " discrepancies";
        r.status = t1.same_ranks(t2) && issues.empty() ? CheckStatus::pass : CheckStatus::fail;
        if (!issues.empty())
            r.reason = issues.front().check + " at " + issues.front().a.to_string() + ": " + issues.front().detail;
    }

    void stability(const std::string& check, const MonomialIdeal& I, const Params& params) {
        run(make_plain(check, params), [&](CheckRecord& r) { stability_body(r, I); });
    }

    VerifyConfig cfg_;
    VerificationReport report_;
    std::map<std::pair<std::string, std::uint32_t>, int> reg_cache_;
    std::map<std::pair<std::string, unsigned>, MonomialIdeal> power_cache_;
};

/// Connected C_{2n}(a, n) with a in {1, 2} and 3 <= n <= max_n.
inline std::vector<std::pair<std::size_t, std::size_t>> connected_grid(std::size_t max_n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t n = 3; n <= max_n; n += 2)
        for (std::size_t a : {1, 2})
            out.emplace_back(n, a);
    return out;
}

/// Every check, over the connected grid bounded by the config.
inline VerificationReport run_suite(const VerifyConfig& cfg) {
    Verifier v(cfg, "suite");
    const auto grid = connected_grid(cfg.max_n);
    for (auto [n, a] : grid)
        v.base(n, a);
    for (auto [n, a] : grid)
        for (std::size_t t = 2; t <= cfg.max_t; ++t)
            if (2 * n * t <= cfg.budget()) {
                v.power_reg(n, a, t);
                v.symbolic(n, a, t);
                if (t == 2) {
                    v.intermediate(n, a, t, n == 3);
                    v.radical_colon(n, a, t);
                }
            }
    for (auto [n, a] : grid) {
        v.banerjee(n, a, n == 3 ? 2 : cfg.max_len, n == 3);
        if (n <= 5)
            v.multiplicity(n, a);
    }
    for (std::size_t n = 2; n <= std::max<std::size_t>(cfg.max_n, 8); ++n)
        for (std::size_t a = 1; a < n; ++a)
            v.decompose(n, a);
    v.general(3, 2, 2);
    if (cfg.extended) {
        v.general(6, 2, 2);
        v.disjoint(2, 3, 2, 2);
    }
    return v.finish();
}

// Text and CSV renderings; JSON lives with the command-line tool.

inline void write_report_text(std::ostream& os, const VerificationReport& r, bool timings = true) {
    os << "circreg " << r.version << " suite=" << r.suite << " seed=" << r.seed << " primes=";
    for (std::size_t k = 0; k < r.primes.size(); ++k)
        os << (k ? "," : "") << r.primes[k];
    os << " lattice_limit=" << r.lattice_limit << (r.extended ? " extended" : "") << '\n';
    for (const auto& c : r.records) {
        os << to_string(c.status) << "  " << c.check << " [" << c.params_text() << "] expected " << c.expected
           << ", computed " << c.computed;
        if (!c.formula_case.empty())
            os << " {" << c.formula_case << "}";
        if (!c.reason.empty())
            os << " -- " << c.reason;
        if (timings)
            os << " (" << static_cast<long long>(c.millis) << " ms)";
        os << '\n';
    }
    os << "pass=" << r.count(CheckStatus::pass) << " fail=" << r.count(CheckStatus::fail)
       << " skipped=" << r.count(CheckStatus::skipped) << '\n';
}

namespace detail {
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}
} // namespace detail

inline void write_report_csv(std::ostream& os, const VerificationReport& r, bool timings = true) {
    os << "check,params,expected,computed,formula_case,status,reason,millis\n";
    for (const auto& c : r.records) {
        os << detail::csv_field(c.check) << ',' << detail::csv_field(c.params_text()) << ','
           << detail::csv_field(c.expected) << ',' << detail::csv_field(c.computed) << ','
           << detail::csv_field(c.formula_case) << ',' << to_string(c.status) << ',' << detail::csv_field(c.reason)
           << ',';
        if (timings)
            os << static_cast<long long>(c.millis);
        os << '\n';
    }
}

} // namespace circreg
