#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace relaycache {

enum class Node { U1, U2, R, BS, D };

// Short label used in link tables: "1", "2", "R", "BS", "D".
const char* node_label(Node n);
// Full name used in config files: "U1", "U2", "R", "BS", "D".
const char* node_name(Node n);
// Accepts either form.
Node parse_node(const std::string& s);

struct NetworkGeometry {
    std::map<Node, double> tx_power_w;                    // P_tx(i), watts
    std::map<std::pair<Node, Node>, double> distance_m;   // ordered (tx, rx)
    double path_loss_exp = 4.0;
    double noise_w = 1e-11;                               // same n at every receiver
    double sinr_threshold_db = 0.0;

    void validate() const;  // throws ConfigError
};

struct LinkBudget {
    // h(i,j) = P_tx(i) / r(i,j)^p, for every stored (tx, rx) pair whose tx has power.
    std::map<std::pair<Node, Node>, double> h;
    double theta_linear = 1.0;  // 10^(theta_db/10)
    double noise_w = 0.0;

    double h_at(Node tx, Node rx) const;  // throws ConfigError naming the pair
};

LinkBudget build_link_budget(const NetworkGeometry& geom);

// P(SINR >= theta) for tx->rx under Rayleigh fading, given the set of nodes
// transmitting this slot. tx must be in active; rx must not transmit.
//   exp(-theta n / h(tx,rx)) * prod_{k in active \ {tx,rx}} 1 / (1 + theta h(k,rx)/h(tx,rx))
double success_prob(const LinkBudget& budget, Node tx, Node rx,
                    const std::vector<Node>& active);

struct SuccessRow {
    Node tx;
    Node rx;
    std::vector<Node> interferers;
    double probability;
};

// The 16 link/interferer combinations of the reference link table, in table order.
std::vector<SuccessRow> success_table(const LinkBudget& budget);

// Every interferer-conditioned success probability used by the model.
// Suffix after '_' lists interferers: 1 = U1, r = R, bs = BS.
struct LinkProbs {
    double p1d, p1d_r, p1d_bs, p1d_rbs;    // U1 -> D
    double p1r, p1r_bs;                    // U1 -> R
    double prd, prd_1, prd_bs, prd_1bs;    // R  -> D
    double pbs2, pbs2_1, pbs2_r, pbs2_1r;  // BS -> U2
    double pr2, pr2_1;                     // R  -> U2
};

LinkProbs link_probs(const LinkBudget& budget);

// Reference scenario: P1 = 1 mW, PR = 2 mW, PBS = 10 mW, n = 1e-11 W, p = 4,
// distances 100 m / 50*sqrt(2) m / 100*sqrt(2) m as in the bundled configs.
NetworkGeometry reference_geometry(double theta_db);

}
