#include "relaycache/sim.hpp"

#include <array>
#include <cmath>
#include <deque>
#include <ostream>
#include <random>

#include "relaycache/errors.hpp"

namespace relaycache {

namespace {

constexpr double kZ99 = 2.5758293035489004;  // two-sided 99% normal quantile

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    // 53-bit uniform in [0,1); identical across platforms.
    double u() { return double(gen() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return u() < p; }
};

}  // namespace

void SimConfig::validate() const {
    if (slots == 0 || warmup >= slots)
        throw ConfigError("sim requires slots > warmup >= 0");
}

SimResult run(const LinkBudget& budget, const TrafficParams& t,
              const CacheConfig& cfg, const SimConfig& sim) {
    t.validate();
    cfg.validate();
    sim.validate();
    const LinkProbs lp = link_probs(budget);
    const std::size_t B = cfg.queue_size;
    const std::uint64_t n_stat = sim.slots - sim.warmup;

    SimResult res;
    res.empirical_pi.assign(B + 1, 0.0);
    res.dq_counts.assign(B + 1, {0, 0, 0});
    res.s_direct.reserve(n_stat);
    res.s_accept.reserve(n_stat);
    res.s_u2.reserve(n_stat);

    Rng rng(sim.seed);
    std::deque<std::uint64_t> queue;  // FCFS: sequence tags of accepted packets
    std::uint64_t next_tag = 0;
    std::uint64_t last_departed_tag = 0;
    bool any_departure = false;

    if (sim.trace)
        *sim.trace << "slot,q,c1,cR,r,hit,cDC,active,successes,q_after\n";

    for (std::uint64_t slot = 0; slot < sim.slots; ++slot) {
        const std::size_t q = queue.size();

        const bool c1 = rng.bernoulli(t.q1);
        const bool cR = rng.bernoulli(t.qR);
        const bool r = rng.bernoulli(t.qU);
        const bool hit = rng.bernoulli(t.ph);
        const bool dc = rng.bernoulli(t.alpha);

        const bool rd = cR && q > 0;
        const bool r2 = !rd && r && hit;
        const bool bs2 = r && dc &&
                         (!hit || (sim.semantics == SlotSemantics::data_center && hit && rd));
        const bool txU1 = c1, txR = rd || r2, txBS = bs2;

        // Interferer-conditioned success draws, fixed link order.
        bool s1d = false, s1r = false, srd = false, sr2 = false, sbs2 = false;
        if (c1) {
            const double p_1d = txR ? (txBS ? lp.p1d_rbs : lp.p1d_r)
                                    : (txBS ? lp.p1d_bs : lp.p1d);
            s1d = rng.bernoulli(p_1d);
            s1r = rng.bernoulli(txBS ? lp.p1r_bs : lp.p1r);
        }
        if (rd) {
            const double p_rd = txU1 ? (txBS ? lp.prd_1bs : lp.prd_1)
                                     : (txBS ? lp.prd_bs : lp.prd);
            srd = rng.bernoulli(p_rd);
        }
        if (r2) sr2 = rng.bernoulli(txU1 ? lp.pr2_1 : lp.pr2);
        if (bs2) {
            const double p_bs2 = txU1 ? (txR ? lp.pbs2_1r : lp.pbs2_1)
                                      : (txR ? lp.pbs2_r : lp.pbs2);
            sbs2 = rng.bernoulli(p_bs2);
        }

        const bool depart = rd && srd;
        const bool offered = c1 && !s1d && s1r;
        const bool arrival = offered && (q < B || depart);
        const bool dropped = offered && !arrival;
        const bool served2 = (r2 && sr2) || (bs2 && sbs2);

        if (depart) {
            const std::uint64_t tag = queue.front();
            queue.pop_front();
            if (any_departure && tag <= last_departed_tag) res.fcfs_ok = false;
            last_departed_tag = tag;
            any_departure = true;
        }
        if (arrival) queue.push_back(next_tag++);

        const bool counted = slot >= sim.warmup;
        if (counted) {
            res.empirical_pi[q] += 1.0;
            const int dq = (arrival ? 1 : 0) - (depart ? 1 : 0);
            res.dq_counts[q][dq + 1] += 1;
            if (c1 && s1d) res.counters.delivered_direct += 1;
            if (depart) res.counters.delivered_relayed += 1;
            if (arrival) res.counters.accepted += 1;
            if (dropped) res.counters.dropped_full += 1;
            if (served2) res.counters.u2_served += 1;
            if (r && !r2 && !bs2) res.counters.u2_blocked += 1;
            if (c1 && s1r) res.counters.u1r_successes += 1;
            res.s_direct.push_back(c1 && s1d ? 1 : 0);
            res.s_accept.push_back(arrival ? 1 : 0);
            res.s_u2.push_back(served2 ? 1 : 0);
        }

        if (sim.trace) {
            auto& os = *sim.trace;
            os << slot << ',' << q << ',' << int(c1) << ',' << int(cR) << ','
               << int(r) << ',' << int(hit) << ',' << int(dc) << ',';
            if (txU1) os << "1";
            if (txR) os << (txU1 ? "+R" : "R");
            if (txBS) os << ((txU1 || txR) ? "+BS" : "BS");
            os << ',';
            bool first = true;
            auto mark = [&](bool s, const char* n) {
                if (s) { os << (first ? "" : "+") << n; first = false; }
            };
            mark(s1d, "1D"); mark(s1r, "1R"); mark(srd, "RD"); mark(sr2, "R2");
            mark(sbs2, "BS2");
            os << ',' << queue.size() << '\n';
        }
    }

    res.slots_counted = n_stat;
    for (double& v : res.empirical_pi) v /= double(n_stat);
    res.report.source = Source::simulated;
    res.report.t_direct = double(res.counters.delivered_direct) / double(n_stat);
    res.report.t_relayed = double(res.counters.accepted) / double(n_stat);
    res.report.t_noncacheable = res.report.t_direct + res.report.t_relayed;
    res.report.t_cacheable = double(res.counters.u2_served) / double(n_stat);
    res.report.t_network = res.report.t_noncacheable + res.report.t_cacheable;
    const std::size_t default_batches = 100;
    if (n_stat >= 20 * default_batches)
        res.ci_halfwidth = batch_means_ci(std::size_t(n_stat / default_batches), res);
    return res;
}

std::map<std::string, double> batch_means_ci(std::size_t samples_per_batch,
                                             const SimResult& result) {
    const std::size_t n = result.s_direct.size();
    if (samples_per_batch == 0) throw ModelError("batch_means_ci: empty batches");
    const std::size_t nb = n / samples_per_batch;
    if (nb < 20)
        throw ModelError("batch_means_ci: " + std::to_string(nb) +
                         " batches; at least 20 required");

    auto halfwidth = [&](auto&& slot_value) {
        std::vector<double> means(nb);
        for (std::size_t b = 0; b < nb; ++b) {
            double s = 0.0;
            const std::size_t off = b * samples_per_batch;
            for (std::size_t i = 0; i < samples_per_batch; ++i) s += slot_value(off + i);
            means[b] = s / double(samples_per_batch);
        }
        double m = 0.0;
        for (double v : means) m += v;
        m /= double(nb);
        double var = 0.0;
        for (double v : means) var += (v - m) * (v - m);
        var /= double(nb - 1);
        return kZ99 * std::sqrt(var / double(nb));
    };

    const auto& d = result.s_direct;
    const auto& a = result.s_accept;
    const auto& u = result.s_u2;
    std::map<std::string, double> ci;
    ci["T_1D"] = halfwidth([&](std::size_t i) { return double(d[i]); });
    ci["T_R"] = halfwidth([&](std::size_t i) { return double(a[i]); });
    ci["T_D"] = halfwidth([&](std::size_t i) { return double(d[i]) + double(a[i]); });
    ci["T_2"] = halfwidth([&](std::size_t i) { return double(u[i]); });
    ci["T"] = halfwidth([&](std::size_t i) { return double(d[i]) + double(a[i]) + double(u[i]); });
    return ci;
}

}
