#include "relaycache/oracle.hpp"

#include "relaycache/errors.hpp"

namespace relaycache {

const char* semantics_tag(SlotSemantics s) {
    return s == SlotSemantics::blocked ? "blocked" : "data-center";
}

SlotSemantics parse_semantics(const std::string& s) {
    if (s == "blocked") return SlotSemantics::blocked;
    if (s == "data-center" || s == "data_center") return SlotSemantics::data_center;
    throw ConfigError("unknown semantics: " + s + " (expected blocked or data-center)");
}

SlotStateOutcome enumerate_slot(const LinkProbs& lp, const TrafficParams& t,
                                SlotSemantics sem, std::size_t q, std::size_t B) {
    t.validate();
    SlotStateOutcome out;
    for (int c1 = 0; c1 <= 1; ++c1)
    for (int cR = 0; cR <= 1; ++cR)
    for (int r = 0; r <= 1; ++r)
    for (int hit = 0; hit <= 1; ++hit)
    for (int dc = 0; dc <= 1; ++dc) {
        const double w_coins = (c1 ? t.q1 : 1.0 - t.q1) * (cR ? t.qR : 1.0 - t.qR) *
                               (r ? t.qU : 1.0 - t.qU) * (hit ? t.ph : 1.0 - t.ph) *
                               (dc ? t.alpha : 1.0 - t.alpha);
        if (w_coins == 0.0) continue;

        const bool rd = cR && q > 0;
        const bool r2 = !rd && r && hit;
        const bool bs2 = r && dc &&
                         (!hit || (sem == SlotSemantics::data_center && hit && rd));
        const bool txU1 = c1 != 0, txR = rd || r2, txBS = bs2;

        const double p_1d = txR ? (txBS ? lp.p1d_rbs : lp.p1d_r)
                                : (txBS ? lp.p1d_bs : lp.p1d);
        const double p_1r = txBS ? lp.p1r_bs : lp.p1r;
        const double p_rd = txU1 ? (txBS ? lp.prd_1bs : lp.prd_1)
                                 : (txBS ? lp.prd_bs : lp.prd);
        const double p_r2 = txU1 ? lp.pr2_1 : lp.pr2;
        const double p_bs2 = txU1 ? (txR ? lp.pbs2_1r : lp.pbs2_1)
                                  : (txR ? lp.pbs2_r : lp.pbs2);

        // Independent link outcomes; inactive links are pinned to failure.
        for (int s1d = 0; s1d <= (c1 ? 1 : 0); ++s1d)
        for (int s1r = 0; s1r <= (c1 ? 1 : 0); ++s1r)
        for (int srd = 0; srd <= (rd ? 1 : 0); ++srd)
        for (int sr2 = 0; sr2 <= (r2 ? 1 : 0); ++sr2)
        for (int sbs2 = 0; sbs2 <= (bs2 ? 1 : 0); ++sbs2) {
            double w = w_coins;
            if (c1) w *= s1d ? p_1d : 1.0 - p_1d;
            if (c1) w *= s1r ? p_1r : 1.0 - p_1r;
            if (rd) w *= srd ? p_rd : 1.0 - p_rd;
            if (r2) w *= sr2 ? p_r2 : 1.0 - p_r2;
            if (bs2) w *= sbs2 ? p_bs2 : 1.0 - p_bs2;
            if (w == 0.0) continue;

            const bool depart = rd && srd;
            const bool offered = c1 && !s1d && s1r;        // packet reached R, not D
            const bool arrival = offered && (q < B || depart);
            const int dq = (arrival ? 1 : 0) - (depart ? 1 : 0);

            if (dq < 0) out.p_down += w;
            else if (dq > 0) out.p_up += w;
            else out.p_stay += w;
            if (c1 && s1d) out.rate_direct += w;
            if (arrival) out.rate_accept += w;
            if ((r2 && sr2) || (bs2 && sbs2)) out.rate_u2 += w;
            if (depart) out.rate_depart += w;
        }
    }
    return out;
}

SlotOutcomeDistribution enumerate_all(const LinkProbs& lp, const TrafficParams& t,
                                      SlotSemantics sem, std::size_t B) {
    SlotOutcomeDistribution dist;
    dist.per_state.reserve(B + 1);
    for (std::size_t q = 0; q <= B; ++q)
        dist.per_state.push_back(enumerate_slot(lp, t, sem, q, B));
    return dist;
}

ChainCoefficients oracle_coefficients(const LinkProbs& lp, const TrafficParams& t,
                                      SlotSemantics sem) {
    // State 0 has no boundary subtleties; interior probed at q=1 of a B=2 chain.
    const SlotStateOutcome empty = enumerate_slot(lp, t, sem, 0, 2);
    const SlotStateOutcome interior = enumerate_slot(lp, t, sem, 1, 2);
    ChainCoefficients co;
    co.a1 = empty.p_up;
    co.b0 = interior.p_down;
    co.b2 = interior.p_up;
    co.b1 = interior.p_stay;
    if (co.b0 > 0.0) {
        co.rho = co.b2 / co.b0;
        co.t0 = co.a1 / co.b0;
    }
    return co;
}

OraclePoint oracle_point(const LinkBudget& budget, const TrafficParams& t,
                         const CacheConfig& cfg, SlotSemantics sem) {
    const LinkProbs lp = link_probs(budget);
    const std::size_t B = cfg.queue_size;
    OraclePoint op;
    op.co = oracle_coefficients(lp, t, sem);
    op.dist = enumerate_all(lp, t, sem, B);
    std::vector<double> up(B), down(B);
    for (std::size_t q = 0; q < B; ++q) {
        up[q] = op.dist.per_state[q].p_up;
        down[q] = op.dist.per_state[q + 1].p_down;
    }
    op.ss = stationary_birth_death(up, down);
    op.rep = ThroughputReport{};
    op.rep.source = Source::oracle;
    for (std::size_t q = 0; q <= B; ++q) {
        const double w = op.ss.pi[q];
        op.rep.t_direct += w * op.dist.per_state[q].rate_direct;
        op.rep.t_relayed += w * op.dist.per_state[q].rate_accept;
        op.rep.t_cacheable += w * op.dist.per_state[q].rate_u2;
    }
    op.rep.t_noncacheable = op.rep.t_direct + op.rep.t_relayed;
    op.rep.t_network = op.rep.t_noncacheable + op.rep.t_cacheable;
    return op;
}

ThroughputReport oracle_report(const LinkBudget& budget, const TrafficParams& t,
                               const CacheConfig& cfg, SlotSemantics sem) {
    return oracle_point(budget, t, cfg, sem).rep;
}

std::vector<DiscrepancyRow> discrepancy_report(const LinkBudget& budget,
                                               const TrafficParams& t,
                                               const CacheConfig& cfg) {
    const AnalyticPoint ap = analytic_point(budget, t, cfg);
    const OraclePoint op = oracle_point(budget, t, cfg, SlotSemantics::blocked);
    auto row = [](const char* name, double closed, double oracle) {
        return DiscrepancyRow{name, closed, oracle, oracle - closed};
    };
    return {
        row("a1", ap.co.a1, op.co.a1),
        row("b0", ap.co.b0, op.co.b0),
        row("b2", ap.co.b2, op.co.b2),
        row("T_1D", ap.rep.t_direct, op.rep.t_direct),
        row("T_R", ap.rep.t_relayed, op.rep.t_relayed),
        row("T_D", ap.rep.t_noncacheable, op.rep.t_noncacheable),
        row("T_2", ap.rep.t_cacheable, op.rep.t_cacheable),
    };
}

}
