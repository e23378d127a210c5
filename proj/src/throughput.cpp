#include "relaycache/throughput.hpp"

namespace relaycache {

const char* source_tag(Source s) {
    switch (s) {
        case Source::closed_form: return "analytic";
        case Source::oracle:      return "oracle";
        case Source::simulated:   return "simulated";
    }
    return "?";
}

double t_direct(const LinkProbs& p, const TrafficParams& t, const SteadyState& ss) {
    const double q1 = t.q1, qR = t.qR, al = t.alpha, qU = t.qU, ph = t.ph;
    const double nqU = 1.0 - qU, nph = 1.0 - ph, nal = 1.0 - al;
    const double Pne = ss.prob_nonempty;
    return q1 * qR * Pne *
               (qU * nph * al * p.p1d_rbs + qU * nph * nal * p.p1d_r + nqU * p.p1d_r)
         + q1 * (1.0 - qR * Pne) *
               (nqU * p.p1d + qU * ph * p.p1d_r + qU * nph * al * p.p1d_bs +
                qU * nph * nal * p.p1d);
}

double t_relayed(const LinkProbs& p, const TrafficParams& t, const SteadyState& ss) {
    const std::size_t B = ss.pi.size() - 1;
    if (B == 0) return 0.0;  // no queue, nothing is ever accepted
    const double q1 = t.q1, qR = t.qR, al = t.alpha, qU = t.qU, ph = t.ph;
    const double nqU = 1.0 - qU, nph = 1.0 - ph, nal = 1.0 - al, nqR = 1.0 - qR;
    const double P0 = ss.pi[0], Pint = ss.prob_interior, PB = ss.prob_full;
    return q1 * P0 *
               (nqU * (1.0 - p.p1d) * p.p1r
              + qU * ph * (1.0 - p.p1d_r) * p.p1r
              + qU * nph * al * (1.0 - p.p1d_bs) * p.p1r_bs
              + qU * nph * nal * (1.0 - p.p1d) * p.p1r)
         + q1 * Pint * qR *
               (nqU * (1.0 - p.p1d_r) * p.p1r
              + qU * al * (1.0 - p.p1d_rbs) * p.p1r_bs
              + qU * nal * (1.0 - p.p1d_r) * p.p1r)
         + q1 * Pint * nqR *
               (nqU * (1.0 - p.p1d) * p.p1r
              + qU * ph * (1.0 - p.p1d_r) * p.p1r
              + qU * nph * (al * (1.0 - p.p1d_bs) * p.p1r_bs +
                            nal * (1.0 - p.p1d) * p.p1r))
         + q1 * PB * qR *
               (nqU * p.prd_1 * (1.0 - p.p1d_r) * p.p1r
              + qU * al * p.prd_1bs * (1.0 - p.p1d_rbs) * p.p1r_bs
              + qU * nal * p.prd_1 * (1.0 - p.p1d_r) * p.p1r);
}

double t_cacheable(const LinkProbs& p, const TrafficParams& t, const SteadyState& ss) {
    const double q1 = t.q1, qR = t.qR, al = t.alpha, qU = t.qU, ph = t.ph;
    const double nq1 = 1.0 - q1, nph = 1.0 - ph;
    const double Pne = ss.prob_nonempty;
    return qU * qR * Pne * nph * al * (q1 * p.pbs2_1r + nq1 * p.pbs2_r)
         + qU * (1.0 - qR * Pne) * q1 * (ph * p.pr2_1 + nph * al * p.pbs2_1)
         + qU * (1.0 - qR * Pne) * nq1 * (ph * p.pr2 + nph * al * p.pbs2);
}

AnalyticPoint analytic_point(const LinkBudget& budget, const TrafficParams& t,
                             const CacheConfig& cfg) {
    const LinkProbs lp = link_probs(budget);
    AnalyticPoint ap;
    ap.co = coefficients(lp, t);
    const std::size_t B = cfg.queue_size;
    ap.ss = (B >= 1 && ap.co.b0 > 0.0) ? steady_state_closed(ap.co, B)
                                       : steady_state_numeric(ap.co, B);
    ap.rep.t_direct = t_direct(lp, t, ap.ss);
    ap.rep.t_relayed = t_relayed(lp, t, ap.ss);
    ap.rep.t_noncacheable = ap.rep.t_direct + ap.rep.t_relayed;
    ap.rep.t_cacheable = t_cacheable(lp, t, ap.ss);
    ap.rep.t_network = ap.rep.t_noncacheable + ap.rep.t_cacheable;
    ap.rep.source = Source::closed_form;
    return ap;
}

ThroughputReport report(const LinkBudget& budget, const TrafficParams& t,
                        const CacheConfig& cfg) {
    return analytic_point(budget, t, cfg).rep;
}

}
