#include "relaycache/phy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "relaycache/errors.hpp"

namespace relaycache {

const char* node_label(Node n) {
    switch (n) {
        case Node::U1: return "1";
        case Node::U2: return "2";
        case Node::R:  return "R";
        case Node::BS: return "BS";
        case Node::D:  return "D";
    }
    return "?";
}

const char* node_name(Node n) {
    switch (n) {
        case Node::U1: return "U1";
        case Node::U2: return "U2";
        case Node::R:  return "R";
        case Node::BS: return "BS";
        case Node::D:  return "D";
    }
    return "?";
}

Node parse_node(const std::string& s) {
    if (s == "U1" || s == "1") return Node::U1;
    if (s == "U2" || s == "2") return Node::U2;
    if (s == "R") return Node::R;
    if (s == "BS") return Node::BS;
    if (s == "D") return Node::D;
    throw ConfigError("unknown node: " + s);
}

static std::string pair_name(Node tx, Node rx) {
    return std::string(node_name(tx)) + "->" + node_name(rx);
}

void NetworkGeometry::validate() const {
    if (path_loss_exp <= 0.0) throw ConfigError("path_loss_exp must be > 0");
    if (noise_w <= 0.0) throw ConfigError("noise_w must be > 0");
    for (const auto& [node, p] : tx_power_w) {
        if (!(p > 0.0))
            throw ConfigError(std::string("tx power must be > 0 for ") + node_name(node));
    }
    for (const auto& [pr, d] : distance_m) {
        if (!(d >= 1.0))
            throw ConfigError("distance must be >= 1 m for " + pair_name(pr.first, pr.second));
    }
}

double LinkBudget::h_at(Node tx, Node rx) const {
    auto it = h.find({tx, rx});
    if (it == h.end())
        throw ConfigError("no link budget for pair " + pair_name(tx, rx) +
                          " (missing distance or tx power)");
    return it->second;
}

LinkBudget build_link_budget(const NetworkGeometry& geom) {
    geom.validate();
    LinkBudget b;
    b.noise_w = geom.noise_w;
    b.theta_linear = std::pow(10.0, geom.sinr_threshold_db / 10.0);
    for (const auto& [pr, d] : geom.distance_m) {
        auto it = geom.tx_power_w.find(pr.first);
        if (it == geom.tx_power_w.end()) continue;  // receiver-first row, never a transmitter
        b.h[pr] = it->second / std::pow(d, geom.path_loss_exp);
    }
    return b;
}

double success_prob(const LinkBudget& budget, Node tx, Node rx,
                    const std::vector<Node>& active) {
    if (std::find(active.begin(), active.end(), tx) == active.end())
        throw std::invalid_argument("success_prob: tx must be in the active set");
    if (std::find(active.begin(), active.end(), rx) != active.end())
        throw std::invalid_argument("success_prob: rx cannot be in the active set");
    const double hs = budget.h_at(tx, rx);
    double p = std::exp(-budget.theta_linear * budget.noise_w / hs);
    for (Node k : active) {
        if (k == tx || k == rx) continue;
        p /= 1.0 + budget.theta_linear * budget.h_at(k, rx) / hs;
    }
    return p;
}

std::vector<SuccessRow> success_table(const LinkBudget& budget) {
    using N = Node;
    struct Entry { N tx, rx; std::vector<N> intf; };
    static const std::vector<Entry> layout = {
        {N::U1, N::D, {}},
        {N::U1, N::D, {N::R}},
        {N::U1, N::D, {N::BS}},
        {N::U1, N::D, {N::R, N::BS}},
        {N::U1, N::R, {}},
        {N::U1, N::R, {N::BS}},
        {N::R, N::D, {}},
        {N::R, N::D, {N::U1}},
        {N::R, N::D, {N::BS}},
        {N::R, N::D, {N::U1, N::BS}},
        {N::BS, N::U2, {}},
        {N::BS, N::U2, {N::U1}},
        {N::BS, N::U2, {N::R}},
        {N::BS, N::U2, {N::U1, N::R}},
        {N::R, N::U2, {}},
        {N::R, N::U2, {N::U1}},
    };
    std::vector<SuccessRow> rows;
    rows.reserve(layout.size());
    for (const auto& e : layout) {
        std::vector<N> active = e.intf;
        active.push_back(e.tx);
        rows.push_back({e.tx, e.rx, e.intf, success_prob(budget, e.tx, e.rx, active)});
    }
    return rows;
}

LinkProbs link_probs(const LinkBudget& b) {
    using N = Node;
    LinkProbs p{};
    p.p1d     = success_prob(b, N::U1, N::D, {N::U1});
    p.p1d_r   = success_prob(b, N::U1, N::D, {N::U1, N::R});
    p.p1d_bs  = success_prob(b, N::U1, N::D, {N::U1, N::BS});
    p.p1d_rbs = success_prob(b, N::U1, N::D, {N::U1, N::R, N::BS});
    p.p1r     = success_prob(b, N::U1, N::R, {N::U1});
    p.p1r_bs  = success_prob(b, N::U1, N::R, {N::U1, N::BS});
    p.prd     = success_prob(b, N::R, N::D, {N::R});
    p.prd_1   = success_prob(b, N::R, N::D, {N::R, N::U1});
    p.prd_bs  = success_prob(b, N::R, N::D, {N::R, N::BS});
    p.prd_1bs = success_prob(b, N::R, N::D, {N::R, N::U1, N::BS});
    p.pbs2    = success_prob(b, N::BS, N::U2, {N::BS});
    p.pbs2_1  = success_prob(b, N::BS, N::U2, {N::BS, N::U1});
    p.pbs2_r  = success_prob(b, N::BS, N::U2, {N::BS, N::R});
    p.pbs2_1r = success_prob(b, N::BS, N::U2, {N::BS, N::U1, N::R});
    p.pr2     = success_prob(b, N::R, N::U2, {N::R});
    p.pr2_1   = success_prob(b, N::R, N::U2, {N::R, N::U1});
    return p;
}

NetworkGeometry reference_geometry(double theta_db) {
    using N = Node;
    const double d_short = 50.0 * std::sqrt(2.0);   // 50*sqrt(2) m
    const double d_diag  = 100.0 * std::sqrt(2.0);  // 100*sqrt(2) m
    NetworkGeometry g;
    g.tx_power_w = {{N::U1, 1e-3}, {N::R, 2e-3}, {N::BS, 10e-3}};
    g.distance_m = {
        {{N::U1, N::D}, 100.0},  {{N::U1, N::R}, d_short}, {{N::U1, N::U2}, 100.0},
        {{N::U1, N::BS}, d_diag},
        {{N::R, N::D}, d_short}, {{N::R, N::U2}, d_short}, {{N::R, N::BS}, d_short},
        {{N::BS, N::D}, 100.0},  {{N::BS, N::U2}, 100.0},  {{N::BS, N::R}, d_short},
    };
    g.path_loss_exp = 4.0;
    g.noise_w = 1e-11;
    g.sinr_threshold_db = theta_db;
    return g;
}

}
