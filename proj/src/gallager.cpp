#include "xorsatlab/gallager.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "xorsatlab/rng.hpp"

namespace xorsat {

namespace {

void check_params(int k, int D, std::size_t b) {
    if (k < 2 || D <= k || b < 1)
        throw std::invalid_argument("Instance: need D > k >= 2 and b >= 1");
}

}  // namespace

std::vector<std::uint32_t> Instance::check_variables(std::size_t w) const {
    std::vector<std::uint32_t> vars(k);
    for (int i = 0; i < k; ++i) {
        std::uint32_t block = perms[i][w] / static_cast<std::uint32_t>(D);
        vars[i] = static_cast<std::uint32_t>(i * b) + block;
    }
    return vars;
}

std::vector<std::vector<std::uint32_t>> Instance::adjacency() const {
    std::vector<std::vector<std::uint32_t>> adj(m());
    for (std::size_t w = 0; w < m(); ++w) adj[w] = check_variables(w);
    return adj;
}

std::vector<std::vector<std::uint32_t>> Instance::variable_constraints() const {
    std::vector<std::vector<std::uint32_t>> cons(n());
    for (auto& c : cons) c.reserve(D);
    for (std::size_t w = 0; w < m(); ++w)
        for (std::uint32_t var : check_variables(w)) cons[var].push_back(static_cast<std::uint32_t>(w));
    return cons;
}

GF2Matrix Instance::matrix() const {
    GF2Matrix B(m(), n());
    for (std::size_t w = 0; w < m(); ++w)
        for (std::uint32_t var : check_variables(w)) B.set(w, var, true);
    return B;
}

void Instance::validate() const {
    check_params(k, D, b);
    const std::size_t mm = m();
    if (perms.size() != static_cast<std::size_t>(k))
        throw std::invalid_argument("Instance: expected k permutations");
    for (const auto& p : perms) {
        if (p.size() != mm) throw std::invalid_argument("Instance: permutation size != D*b");
        std::vector<bool> seen(mm, false);
        for (std::uint32_t x : p) {
            if (x >= mm || seen[x]) throw std::invalid_argument("Instance: perm is not a bijection");
            seen[x] = true;
        }
    }
    if (v.size() != mm) throw std::invalid_argument("Instance: v length != m");
    // Degree regularity: k distinct variables per constraint, D constraints
    // per variable. Row side is structural (one variable per layer); check the
    // column side explicitly.
    std::vector<std::size_t> deg(n(), 0);
    for (std::size_t w = 0; w < mm; ++w)
        for (std::uint32_t var : check_variables(w)) ++deg[var];
    for (std::size_t c = 0; c < n(); ++c)
        if (deg[c] != static_cast<std::size_t>(D))
            throw std::invalid_argument("Instance: variable degree != D");
}

Instance sample_instance(int k, int D, std::size_t b, std::uint64_t seed) {
    check_params(k, D, b);
    Instance inst;
    inst.k = k;
    inst.D = D;
    inst.b = b;
    inst.seed = seed;
    const std::size_t m = static_cast<std::size_t>(D) * b;
    Rng root(seed);
    inst.perms.resize(k);
    for (int i = 0; i < k; ++i) {
        auto& p = inst.perms[i];
        p.resize(m);
        std::iota(p.begin(), p.end(), 0u);
        Rng stream = root.split(static_cast<std::uint64_t>(i));
        shuffle(p, stream);
    }
    Rng vstream = root.split(static_cast<std::uint64_t>(k));
    inst.v = GF2Vector(m);
    for (std::size_t i = 0; i < m; ++i)
        if (vstream.next_u64() & 1) inst.v.set(i, true);
    return inst;
}

Instance make_identity_instance(int k, int D, std::size_t b) {
    check_params(k, D, b);
    Instance inst;
    inst.k = k;
    inst.D = D;
    inst.b = b;
    inst.seed = 0;
    const std::size_t m = static_cast<std::size_t>(D) * b;
    inst.perms.assign(k, std::vector<std::uint32_t>(m));
    for (auto& p : inst.perms) std::iota(p.begin(), p.end(), 0u);
    inst.v = GF2Vector(m);
    return inst;
}

BlockPartition block_partition(const Instance& inst) {
    const std::size_t nblocks = inst.b;  // m/D
    BlockPartition part;
    part.blocks.assign(nblocks, {});
    part.defining_variable.resize(nblocks);
    for (std::size_t j = 0; j < nblocks; ++j) {
        part.blocks[j].reserve(inst.D);
        part.defining_variable[j] = static_cast<std::uint32_t>(j);  // layer 0
    }
    for (std::size_t w = 0; w < inst.m(); ++w)
        part.blocks[inst.perms[0][w] / static_cast<std::uint32_t>(inst.D)].push_back(
            static_cast<std::uint32_t>(w));
    return part;
}

std::uint64_t count_short_cycles(const Instance& inst, int ell) {
    if (ell != 2 && ell != 3) throw std::invalid_argument("count_short_cycles: ell must be 2 or 3");
    const auto adj = inst.adjacency();              // constraint -> variables
    const auto cons = inst.variable_constraints();  // variable -> constraints
    const std::size_t n = inst.n();

    if (ell == 2) {
        // Sum over variable pairs of C(shared constraints, 2).
        std::unordered_map<std::uint64_t, std::uint32_t> overlap;
        for (const auto& vars : adj)
            for (std::size_t a = 0; a < vars.size(); ++a)
                for (std::size_t bidx = a + 1; bidx < vars.size(); ++bidx) {
                    std::uint32_t lo = std::min(vars[a], vars[bidx]);
                    std::uint32_t hi = std::max(vars[a], vars[bidx]);
                    ++overlap[static_cast<std::uint64_t>(lo) * n + hi];
                }
        std::uint64_t total = 0;
        for (const auto& [key, cnt] : overlap)
            total += static_cast<std::uint64_t>(cnt) * (cnt - 1) / 2;
        return total;
    }

    // ell == 3: ordered 6-walks w1 -> ca -> w2 -> cc -> w3 -> cb -> w1 with
    // distinct constraints {w1,w2,w3} and variables {ca,cb,cc}; every cycle is
    // traversed 6 times (3 start points x 2 directions).
    auto connected = [&](std::uint32_t w, std::uint32_t var) {
        const auto& vars = adj[w];
        return std::find(vars.begin(), vars.end(), var) != vars.end();
    };
    std::uint64_t walks = 0;
    for (std::size_t w1 = 0; w1 < inst.m(); ++w1) {
        const auto& vars1 = adj[w1];
        for (std::uint32_t ca : vars1)
            for (std::uint32_t cb : vars1) {
                if (ca == cb) continue;
                for (std::uint32_t w2 : cons[ca]) {
                    if (w2 == w1) continue;
                    for (std::uint32_t cc : adj[w2]) {
                        if (cc == ca || cc == cb) continue;
                        for (std::uint32_t w3 : cons[cc]) {
                            if (w3 == w1 || w3 == static_cast<std::uint32_t>(w2)) continue;
                            if (connected(w3, cb)) ++walks;
                        }
                    }
                }
            }
    }
    return walks / 6;
}

double treelike_fraction(const Instance& inst, int ell) {
    const auto adj = inst.adjacency();
    const auto cons = inst.variable_constraints();
    const std::size_t m = inst.m(), n = inst.n();
    const std::size_t total = m + n;
    const int radius = 2 * ell;
    // Vertex ids: constraints [0, m), variables [m, m+n).
    auto neighbors = [&](std::size_t u) -> std::vector<std::uint32_t> {
        std::vector<std::uint32_t> out;
        if (u < m) {
            for (std::uint32_t var : adj[u]) out.push_back(static_cast<std::uint32_t>(m) + var);
        } else {
            for (std::uint32_t w : cons[u - m]) out.push_back(w);
        }
        return out;
    };

    std::vector<int> dist(total, -1);
    std::vector<std::uint32_t> ball;
    std::size_t treelike = 0;
    for (std::size_t root = 0; root < total; ++root) {
        ball.clear();
        std::queue<std::uint32_t> q;
        dist[root] = 0;
        q.push(static_cast<std::uint32_t>(root));
        ball.push_back(static_cast<std::uint32_t>(root));
        while (!q.empty()) {
            std::uint32_t u = q.front();
            q.pop();
            if (dist[u] == radius) continue;
            for (std::uint32_t w : neighbors(u)) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    ball.push_back(w);
                    q.push(w);
                }
            }
        }
        // Induced edge count: acyclic iff edges == |ball| - 1.
        std::size_t edges = 0;
        for (std::uint32_t u : ball) {
            if (u >= m) continue;  // count each bipartite edge from the constraint side
            for (std::uint32_t w : neighbors(u))
                if (dist[w] >= 0) ++edges;
        }
        if (edges == ball.size() - 1) ++treelike;
        for (std::uint32_t u : ball) dist[u] = -1;
    }
    return static_cast<double>(treelike) / static_cast<double>(total);
}

std::string instance_to_json(const Instance& inst) {
    nlohmann::ordered_json j;
    j["k"] = inst.k;
    j["D"] = inst.D;
    j["b"] = inst.b;
    j["seed"] = inst.seed;
    j["perms"] = inst.perms;
    j["v"] = inst.v.to_string();
    return j.dump();
}

Instance instance_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Instance inst;
    inst.k = j.at("k").get<int>();
    inst.D = j.at("D").get<int>();
    inst.b = j.at("b").get<std::size_t>();
    inst.seed = j.at("seed").get<std::uint64_t>();
    inst.perms = j.at("perms").get<std::vector<std::vector<std::uint32_t>>>();
    inst.v = GF2Vector::from_string(j.at("v").get<std::string>());
    inst.validate();
    return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_instance: cannot open " + path);
    out << instance_to_json(inst) << '\n';
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_instance: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return instance_from_json(text);
}

}  // namespace xorsat
