#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "horadam/identities.hpp"

namespace horadam {

std::string_view to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::Verified:
            return "verified";
        case Outcome::Mismatch:
            return "mismatch";
        case Outcome::OutsideDomainEqual:
            return "outside-domain-equal";
        case Outcome::OutsideDomainMismatch:
            return "outside-domain-mismatch";
        case Outcome::Skipped:
            return "skipped";
    }
    return "skipped";
}

EvaluationReport verify(const InstanceRequest& request) {
    using Clock = std::chrono::steady_clock;
    EvaluationReport rep;
    rep.instance = normalize(request);
    const bool in_domain = in_verified_domain(rep.instance.a_n, rep.instance.c);
    try {
        IdentityInstance inst = IdentityInstance::create(request);
        rep.instance = inst.request();

        auto t0 = Clock::now();
        auto lhs = oracle_nested_counted(lhs_spec(inst));
        auto t1 = Clock::now();
        ClosedFormCost cost;
        Rational r = rhs(inst, &cost);
        auto t2 = Clock::now();

        rep.oracle_time = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0);
        rep.closed_time = std::chrono::duration_cast<std::chrono::nanoseconds>(t2 - t1);
        rep.oracle_terms = lhs.summand_evals;
        rep.closed_terms = cost.summand_evals();
        rep.equal = lhs.value == r;
        rep.lhs = std::move(lhs.value);
        rep.rhs = std::move(r);
        if (in_domain) {
            rep.outcome = rep.equal ? Outcome::Verified : Outcome::Mismatch;
        } else {
            rep.outcome = rep.equal ? Outcome::OutsideDomainEqual : Outcome::OutsideDomainMismatch;
        }
    } catch (const InvalidInstance& e) {
        rep.outcome = Outcome::Skipped;
        rep.message = e.violation();
    } catch (const InvariantBreach& e) {
        rep.outcome = in_domain ? Outcome::Mismatch : Outcome::OutsideDomainMismatch;
        rep.message = e.what();
    } catch (const Error& e) {
        rep.outcome = Outcome::Skipped;
        rep.message = e.what();
    }
    return rep;
}

std::vector<InstanceRequest> expand_grid(IdentityId id, const SweepGrid& grid) {
    const IdentityTraits& t = traits(id);
    auto axis = [](const IndexRange& range, bool used, const std::optional<Index>& fixed) {
        std::vector<Index> values;
        if (fixed) {
            values.push_back(*fixed);
        } else if (!used) {
            values.push_back(0);
        } else {
            for (Index v = range.first; v <= range.last; ++v) values.push_back(v);
        }
        return values;
    };
    const auto rs = axis(grid.r, t.uses_r, t.fixed_r);
    const auto ss = axis(grid.s, t.uses_s, t.fixed_s);
    const auto ds = axis(grid.d, t.uses_d, t.fixed_d);
    const auto cs = axis(grid.c, true, t.fixed_c);

    std::vector<InstanceRequest> out;
    if (grid.n.empty() || grid.c.empty() || rs.empty() || ss.empty() || ds.empty()) return out;
    for (const auto& family : grid.families) {
        for (Index n = grid.n.first; n <= grid.n.last; ++n) {
            for (Index c : cs) {
                const IndexRange a = grid.a_absolute ? *grid.a_absolute
                                                     : IndexRange{c + grid.a_offset.first, c + grid.a_offset.last};
                for (Index a_n = a.first; a_n <= a.last; ++a_n) {
                    for (Index r : rs) {
                        for (Index s : ss) {
                            for (Index d : ds) {
                                out.push_back(InstanceRequest{id, family.params, n, a_n, c, r, s, d});
                            }
                        }
                    }
                }
            }
        }
    }

    if (grid.samples && *grid.samples < out.size()) {
        // Reservoir sampling on raw engine output keeps the subset identical
        // across standard-library implementations.
        const std::size_t k = *grid.samples;
        std::mt19937_64 rng(grid.seed);
        std::vector<std::size_t> keep(k);
        for (std::size_t i = 0; i < k; ++i) keep[i] = i;
        for (std::size_t i = k; i < out.size(); ++i) {
            const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
            if (j < k) keep[j] = i;
        }
        std::sort(keep.begin(), keep.end());
        std::vector<InstanceRequest> chosen;
        chosen.reserve(k);
        for (std::size_t i : keep) chosen.push_back(out[i]);
        out = std::move(chosen);
    }
    return out;
}

std::vector<EvaluationReport> verify_all(const std::vector<InstanceRequest>& requests, unsigned jobs) {
    std::vector<EvaluationReport> reports(requests.size());
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, requests.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < requests.size(); ++i) reports[i] = verify(requests[i]);
        return reports;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < requests.size(); i = next++) reports[i] = verify(requests[i]);
        });
    }
    for (auto& th : pool) th.join();
    return reports;
}

std::vector<EvaluationReport> sweep(IdentityId id, const SweepGrid& grid, unsigned jobs) {
    return verify_all(expand_grid(id, grid), jobs);
}

void SweepSummary::add(const EvaluationReport& report) {
    ++total;
    switch (report.outcome) {
        case Outcome::Verified:
            ++verified;
            break;
        case Outcome::Mismatch:
            ++mismatches;
            break;
        case Outcome::OutsideDomainEqual:
            ++outside_equal;
            break;
        case Outcome::OutsideDomainMismatch:
            ++outside_mismatch;
            break;
        case Outcome::Skipped:
            ++skipped;
            break;
    }
}

SweepSummary summarize(const std::vector<EvaluationReport>& reports) {
    SweepSummary s;
    for (const auto& r : reports) s.add(r);
    return s;
}

}  // namespace horadam
