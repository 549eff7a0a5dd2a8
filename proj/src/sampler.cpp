// Copyright 2026 The qaoatn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qaoatn/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "qaoatn/philox.hpp"

namespace qaoatn {

namespace {

Tensor ones(std::vector<Index> inds) {
    Tensor t(std::move(inds));
    std::fill(t.storage().begin(), t.storage().end(), cplx(1.0, 0.0));
    return t;
}

// Sum of all entries of a tensor whose remaining legs all have dimension 1.
cplx scalar_of(const Tensor& t) {
    if (t.size() != 1) throw SamplerError("boundary contraction did not close: " + describe(t));
    return t.storage()[0];
}

BoundaryMps empty_mps(bool double_layer) {
    BoundaryMps m;
    m.links.push_back(new_link_id());
    m.double_layer = double_layer;
    return m;
}

std::vector<IndexId> phys_legs(const BoundaryMps& m, std::size_t k) {
    std::vector<IndexId> legs{bond_id(m.edges[k])};
    if (m.double_layer) legs.push_back(prime(bond_id(m.edges[k])));
    return legs;
}

Tensor conj_primed_links(const BoundaryMps& m, std::size_t k) {
    Tensor t = m.sites[k].conj();
    t.relabel(m.links[k], prime(m.links[k]));
    t.relabel(m.links[k + 1], prime(m.links[k + 1]));
    return t;
}

// <a|b> without the log scales.
cplx overlap(const BoundaryMps& a, const BoundaryMps& b) {
    if (a.size() != b.size()) throw SamplerError("overlap of MPSs with different lengths");
    Tensor e = ones({{prime(a.links.front()), 1}, {b.links.front(), 1}});
    for (std::size_t k = 0; k < a.size(); ++k) {
        e = contract(e, conj_primed_links(a, k));
        e = contract(e, b.sites[k]);
    }
    return scalar_of(e);
}

// Right-canonicalizes and then truncates left to right; returns the summed
// relative discarded weight. The orthogonality center ends on the last site,
// which is normalized into log_scale.
double compress(BoundaryMps& m, int max_rank, double cutoff) {
    const std::size_t n = m.size();
    if (n == 0) return 0.0;
    for (std::size_t k = n - 1; k >= 1; --k) {
        std::vector<IndexId> rows = phys_legs(m, k);
        rows.push_back(m.links[k + 1]);
        const IndexId nl = new_link_id();
        QrResult f = qr(m.sites[k], rows, nl);
        m.sites[k] = std::move(f.q);
        m.sites[k - 1] = contract(m.sites[k - 1], f.r);
        m.links[k] = nl;
    }
    double discarded = 0;
    SvdOptions opts{max_rank, cutoff};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::vector<IndexId> rows{m.links[k]};
        for (IndexId id : phys_legs(m, k)) rows.push_back(id);
        const IndexId nl = new_link_id();
        SvdResult f = svd(m.sites[k], rows, nl, opts);
        discarded += f.discarded_weight;
        m.sites[k] = std::move(f.u);
        MatrixC s = MatrixC::Zero(f.link.dim, f.link.dim);
        for (std::int64_t i = 0; i < f.link.dim; ++i) s(i, i) = f.s[i];
        m.sites[k + 1] = contract(apply_matrix(f.v, nl, s), m.sites[k + 1]);
        m.links[k + 1] = nl;
    }
    const double nrm = m.sites[n - 1].norm();
    if (!(nrm > 0) || !std::isfinite(nrm)) throw SamplerError("boundary MPS compressed to zero norm");
    m.sites[n - 1].scale(1.0 / nrm);
    m.log_scale += std::log(nrm);
    return discarded;
}

// Two-site variational fitting of `m` (left-canonical, center on the last
// site) to `target`, `passes` times right-to-left then left-to-right.
void refine(BoundaryMps& m, const BoundaryMps& target, int passes, int max_rank, double cutoff) {
    const std::size_t n = m.size();
    if (n < 2 || passes <= 0) return;
    // Environments between conj(m) (primed links) and target.
    std::vector<Tensor> left(n + 1), right(n + 1);
    auto left_step = [&](std::size_t k) {
        Tensor e = contract(left[k], conj_primed_links(m, k));
        left[k + 1] = contract(e, target.sites[k]);
    };
    auto right_step = [&](std::size_t k) {
        Tensor e = contract(right[k + 1], conj_primed_links(m, k));
        right[k] = contract(e, target.sites[k]);
    };
    left[0] = ones({{prime(m.links.front()), 1}, {target.links.front(), 1}});
    right[n] = ones({{prime(m.links.back()), 1}, {target.links.back(), 1}});
    for (std::size_t k = 0; k + 1 < n; ++k) left_step(k);
    const SvdOptions opts{max_rank, cutoff};

    auto solve_pair = [&](std::size_t k, bool moving_left) {
        Tensor theta = contract(left[k], target.sites[k]);
        theta = contract(theta, target.sites[k + 1]);
        theta = contract(theta, right[k + 2]);
        theta.relabel(prime(m.links[k]), m.links[k]);
        theta.relabel(prime(m.links[k + 2]), m.links[k + 2]);
        std::vector<IndexId> rows{m.links[k]};
        for (IndexId id : phys_legs(m, k)) rows.push_back(id);
        const IndexId nl = new_link_id();
        SvdResult f = svd(theta, rows, nl, opts);
        MatrixC s = MatrixC::Zero(f.link.dim, f.link.dim);
        for (std::int64_t i = 0; i < f.link.dim; ++i) s(i, i) = f.s[i];
        if (moving_left) {
            m.sites[k] = apply_matrix(f.u, nl, s);
            m.sites[k + 1] = std::move(f.v);
        } else {
            m.sites[k] = std::move(f.u);
            m.sites[k + 1] = apply_matrix(f.v, nl, s);
        }
        m.links[k + 1] = nl;
    };

    for (int pass = 0; pass < passes; ++pass) {
        for (std::size_t k = n - 1; k-- > 0;) {
            solve_pair(k, true);
            right_step(k + 1);
        }
        for (std::size_t k = 0; k + 1 < n; ++k) {
            solve_pair(k, false);
            left_step(k);
        }
    }
    // The optimum carries the target's norm; move it into log_scale.
    const double nrm = m.sites[n - 1].norm();
    if (!(nrm > 0) || !std::isfinite(nrm)) throw SamplerError("variational fit collapsed to zero");
    m.sites[n - 1].scale(1.0 / nrm);
    m.log_scale = target.log_scale + std::log(nrm);
}

struct ColumnLayout {
    std::vector<int> vertices;
    std::vector<std::vector<int>> in_sites;   // sites of the left boundary per group
    std::vector<std::vector<int>> out_sites;  // sites of the right boundary per group
};

std::vector<ColumnLayout> column_layouts(const Lattice& lattice, const ColumnPartition& part) {
    std::vector<ColumnLayout> out(part.num_columns());
    for (int b = 0; b < part.num_columns(); ++b) {
        auto& c = out[b];
        c.vertices = part.columns[b];
        c.in_sites.assign(c.vertices.size(), {});
        c.out_sites.assign(c.vertices.size(), {});
        auto place = [&](const std::vector<int>& edges, std::vector<std::vector<int>>& slots) {
            int last_group = -1;
            for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
                const auto& e = lattice.edges()[edges[k]];
                const int v = part.column_of[e.a] == b ? e.a : e.b;
                const int g = part.position_of[v];
                if (g < last_group) throw SamplerError("crossing edges are not ordered along the column");
                last_group = g;
                slots[g].push_back(k);
            }
        };
        if (b > 0) place(part.crossing_edges[b - 1], c.in_sites);
        if (b + 1 < part.num_columns()) place(part.crossing_edges[b], c.out_sites);
    }
    return out;
}

// Contracts one column (given per-group layer tensors) with the boundary
// `in` and re-emits it as an MPS on `out_edges`.
BoundaryMps zip_column(const std::vector<std::vector<const Tensor*>>& layers, const BoundaryMps& in,
                       const std::vector<std::vector<int>>& in_sites, const std::vector<int>& out_edges,
                       const std::vector<std::vector<int>>& out_sites, bool double_layer, const SvdOptions& opts) {
    BoundaryMps out;
    out.double_layer = double_layer;
    out.edges = out_edges;
    out.log_scale = in.log_scale;
    IndexId prev = new_link_id();
    out.links.push_back(prev);
    Tensor c = ones({{prev, 1}, {in.links.front(), 1}});
    for (std::size_t g = 0; g < layers.size(); ++g) {
        for (int k : in_sites[g]) c = contract(c, in.sites[k]);
        for (const Tensor* t : layers[g]) c = contract(c, *t);
        for (int k : out_sites[g]) {
            std::vector<IndexId> rows{prev, bond_id(out_edges[k])};
            if (double_layer) rows.push_back(prime(bond_id(out_edges[k])));
            const IndexId nl = new_link_id();
            SvdResult f = svd(c, rows, nl, opts);
            MatrixC s = MatrixC::Zero(f.link.dim, f.link.dim);
            for (std::int64_t i = 0; i < f.link.dim; ++i) s(i, i) = f.s[i];
            out.sites.push_back(std::move(f.u));
            c = apply_matrix(f.v, nl, s);
            out.links.push_back(nl);
            prev = nl;
        }
    }
    if (out.sites.empty()) throw SamplerError("column has no crossing edges to emit");
    Tensor last = contract(out.sites.back(), c);
    const IndexId end = new_link_id();
    last.relabel(in.links.back(), end);
    if (last.rank() != out.sites.back().rank()) throw SamplerError("zip left open legs: " + describe(last));
    out.sites.back() = std::move(last);
    out.links.back() = end;
    return out;
}

// Contracts `pending` into `env` one tensor at a time, in the order with the
// fewest total multiply-adds (all orders are tried; groups are small).
Tensor contract_cheapest(Tensor env, std::vector<const Tensor*> pending) {
    using Legs = std::vector<Index>;
    auto step = [](const Legs& a, const Legs& b, double& cost) {
        Legs out;
        double c = 1;
        for (const auto& ix : a) {
            c *= static_cast<double>(ix.dim);
            if (std::none_of(b.begin(), b.end(), [&](const Index& y) { return y.id == ix.id; })) out.push_back(ix);
        }
        for (const auto& ix : b) {
            if (std::none_of(a.begin(), a.end(), [&](const Index& y) { return y.id == ix.id; })) {
                c *= static_cast<double>(ix.dim);
                out.push_back(ix);
            }
        }
        cost += c;
        return out;
    };
    std::vector<std::size_t> order(pending.size()), best;
    std::iota(order.begin(), order.end(), 0);
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double cost = 0;
        Legs legs = env.indices();
        for (std::size_t i : order) {
            legs = step(legs, pending[i]->indices(), cost);
            if (cost >= best_cost) break;
        }
        if (cost < best_cost) {
            best_cost = cost;
            best = order;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    for (std::size_t i : best) env = contract(env, *pending[i]);
    return env;
}

struct ColumnTensors {
    std::vector<Tensor> ket;                    // T_v
    std::vector<Tensor> bra;                    // conj(T_v), bonds primed
    std::vector<std::array<Tensor, 2>> ket_at;  // T_v with the qubit fixed
    std::vector<std::array<Tensor, 2>> bra_at;
};

ColumnTensors column_tensors(const TNState& state, const ColumnLayout& col) {
    ColumnTensors ct;
    for (int v : col.vertices) {
        const Tensor& t = state.site(v);
        Tensor b = t.conj();
        b.prime_if([&](IndexId id) { return id != phys_id(v); });
        ct.ket_at.push_back({slice(t, phys_id(v), 0), slice(t, phys_id(v), 1)});
        ct.bra_at.push_back({slice(b, phys_id(v), 0), slice(b, phys_id(v), 1)});
        ct.ket.push_back(t);
        ct.bra.push_back(std::move(b));
    }
    return ct;
}

// Per-prefix view of one column during sampling: the amplitude MPS sites
// (ket and primed conjugate) grouped per vertex, and the norm MPS sites.
struct GroupChain {
    const ColumnLayout* col = nullptr;
    const ColumnTensors* ct = nullptr;
    const BoundaryMps* m = nullptr;  // left amplitude boundary
    const BoundaryMps* M = nullptr;  // right norm boundary, null for the last column
    std::vector<Tensor> m_bra;

    // mode: -1 traces the qubit, 0/1 fixes it.
    Tensor absorb(Tensor env, std::size_t g, int mode) const {
        std::vector<const Tensor*> pending;
        for (int k : col->in_sites[g]) pending.push_back(&m->sites[k]);
        pending.push_back(mode < 0 ? &ct->ket[g] : &ct->ket_at[g][mode]);
        if (M) {
            for (int k : col->out_sites[g]) pending.push_back(&M->sites[k]);
        }
        pending.push_back(mode < 0 ? &ct->bra[g] : &ct->bra_at[g][mode]);
        for (int k : col->in_sites[g]) pending.push_back(&m_bra[k]);
        return contract_cheapest(std::move(env), std::move(pending));
    }

    Tensor top() const {
        std::vector<Index> legs{{m->links.front(), 1}, {prime(m->links.front()), 1}};
        if (M) legs.push_back({M->links.front(), 1});
        return ones(std::move(legs));
    }

    Tensor bottom() const {
        std::vector<Index> legs{{m->links.back(), 1}, {prime(m->links.back()), 1}};
        if (M) legs.push_back({M->links.back(), 1});
        return ones(std::move(legs));
    }
};

struct Slot {
    std::uint64_t index = 0;
    std::mt19937_64 rng;
    std::vector<std::uint8_t> bits;
    double log_q = 0.0;
    double log_p = 0.0;
    bool aborted = false;
    std::string reason;
};

struct Node {
    BoundaryMps m;
    std::vector<std::size_t> members;
};

}  // namespace

std::int64_t BoundaryMps::max_link_dim() const {
    std::int64_t d = 1;
    for (std::size_t k = 0; k + 1 < links.size() && k < sites.size(); ++k) {
        if (sites[k].has(links[k + 1])) d = std::max(d, sites[k].dim(links[k + 1]));
    }
    return d;
}

BoundaryEnvs build_norm_envs(const TNState& state, const ColumnPartition& partition,
                             const CompressionOptions& options) {
    const Lattice& lat = state.lattice();
    if (static_cast<int>(partition.column_of.size()) != lat.num_vertices()) {
        throw SamplerError("partition does not cover the state's lattice");
    }
    if (!crossing_edges_are_ordered(lat, partition)) throw SamplerError("column partition has crossing edges");
    const auto layouts = column_layouts(lat, partition);
    const int nb = partition.num_columns();
    BoundaryEnvs envs;
    envs.partition = partition;
    envs.rank = options.max_rank;
    envs.norm.assign(std::max(nb - 1, 0), {});
    envs.fit_residual.assign(std::max(nb - 1, 0), 0.0);
    int zip_rank = options.zip_rank;
    if (zip_rank <= 0) zip_rank = options.max_rank > 0 ? 4 * options.max_rank : 0;
    const SvdOptions zip_opts{zip_rank, options.cutoff};

    const BoundaryMps none = empty_mps(true);
    for (int b = nb - 2; b >= 0; --b) {
        const int c = b + 1;
        const ColumnTensors ct = column_tensors(state, layouts[c]);
        std::vector<std::vector<const Tensor*>> layers;
        for (std::size_t g = 0; g < layouts[c].vertices.size(); ++g) layers.push_back({&ct.ket[g], &ct.bra[g]});
        const BoundaryMps& in = c + 1 < nb ? envs.norm[c] : none;
        // The sweep runs right to left: the incoming boundary sits on the
        // column's right edges and the emitted one on its left edges.
        BoundaryMps a = zip_column(layers, in, layouts[c].out_sites, partition.crossing_edges[b],
                                   layouts[c].in_sites, true, zip_opts);
        BoundaryMps m = a;
        compress(m, options.max_rank, options.cutoff);
        if (options.max_rank > 0 && options.variational_passes > 0 && m.max_link_dim() < a.max_link_dim()) {
            refine(m, a, options.variational_passes, options.max_rank, options.cutoff);
        }
        const double aa = std::abs(overlap(a, a));
        const double mm = std::abs(overlap(m, m));
        const double ma = std::abs(overlap(m, a));
        double residual = 1.0 - (ma * ma) / (mm * aa);
        envs.fit_residual[b] = std::max(residual, 0.0);
        envs.norm[b] = std::move(m);
    }
    return envs;
}

SampleBatch draw_samples(const TNState& state, const BoundaryEnvs& envs, std::uint64_t first_index,
                         std::size_t count, std::uint64_t seed, const SamplerOptions& options) {
    const Lattice& lat = state.lattice();
    const ColumnPartition& part = envs.partition;
    const int nb = part.num_columns();
    const int n = lat.num_vertices();
    const auto layouts = column_layouts(lat, part);
    int amp_zip = options.amplitude_rank > 0 ? 4 * options.amplitude_rank : 0;
    const SvdOptions amp_zip_opts{amp_zip, options.norm.cutoff};

    std::vector<Slot> slots(count);
    for (std::size_t i = 0; i < count; ++i) {
        slots[i].index = first_index + i;
        slots[i].rng.seed(derive_seed(seed, first_index + i));
        slots[i].bits.assign(n, 0);
    }

    std::vector<Node> nodes(1);
    nodes[0].m = empty_mps(false);
    nodes[0].members.resize(count);
    std::iota(nodes[0].members.begin(), nodes[0].members.end(), 0);

    for (int b = 0; b < nb; ++b) {
        const ColumnLayout& col = layouts[b];
        const ColumnTensors ct = column_tensors(state, col);
        const std::size_t groups = col.vertices.size();
        std::vector<Node> next;
        for (Node& node : nodes) {
            GroupChain chain;
            chain.col = &col;
            chain.ct = &ct;
            chain.m = &node.m;
            chain.M = b + 1 < nb ? &envs.norm[b] : nullptr;
            for (std::size_t k = 0; k < node.m.size(); ++k) {
                Tensor t = node.m.sites[k].conj();
                t.prime_if([](IndexId) { return true; });
                chain.m_bra.push_back(std::move(t));
            }
            std::vector<Tensor> below(groups + 1);
            below[groups] = chain.bottom();
            for (std::size_t g = groups; g-- > 0;) below[g] = chain.absorb(below[g + 1], g, -1);

            struct Part {
                Tensor env;
                std::vector<std::size_t> members;
            };
            std::vector<Part> parts{{chain.top(), node.members}};
            for (std::size_t g = 0; g < groups; ++g) {
                const int v = col.vertices[g];
                std::vector<Part> split;
                for (Part& p : parts) {
                    Tensor fixed[2] = {chain.absorb(p.env, g, 0), chain.absorb(p.env, g, 1)};
                    double w[2];
                    for (int s = 0; s < 2; ++s) w[s] = std::max(0.0, scalar_of(contract(fixed[s], below[g + 1])).real());
                    const double total = w[0] + w[1];
                    if (!(total > 1e-300) || !std::isfinite(total)) {
                        std::ostringstream os;
                        os << "degenerate conditional at qubit " << v << " (mass " << total << ")";
                        for (std::size_t i : p.members) {
                            slots[i].aborted = true;
                            slots[i].reason = os.str();
                        }
                        continue;
                    }
                    std::vector<std::size_t> chosen[2];
                    for (std::size_t i : p.members) {
                        const double u = unit_double(slots[i].rng());
                        const int s = (u * total < w[0] || w[1] == 0.0) ? 0 : 1;
                        slots[i].bits[v] = static_cast<std::uint8_t>(s);
                        slots[i].log_q += std::log(w[s] / total);
                        chosen[s].push_back(i);
                    }
                    for (int s = 0; s < 2; ++s) {
                        if (chosen[s].empty()) continue;
                        fixed[s].scale(1.0 / total);
                        split.push_back({std::move(fixed[s]), std::move(chosen[s])});
                    }
                }
                parts = std::move(split);
            }

            for (Part& p : parts) {
                const auto& bits = slots[p.members.front()].bits;
                std::vector<std::vector<const Tensor*>> layers;
                for (std::size_t g = 0; g < groups; ++g) layers.push_back({&ct.ket_at[g][bits[col.vertices[g]]]});
                if (b + 1 < nb) {
                    Node child;
                    child.m = zip_column(layers, node.m, col.in_sites, part.crossing_edges[b], col.out_sites, false,
                                         amp_zip_opts);
                    compress(child.m, options.amplitude_rank, options.norm.cutoff);
                    child.members = std::move(p.members);
                    next.push_back(std::move(child));
                } else {
                    Tensor acc = ones({{node.m.links.front(), 1}});
                    for (std::size_t g = 0; g < groups; ++g) {
                        for (int k : col.in_sites[g]) acc = contract(acc, node.m.sites[k]);
                        acc = contract(acc, *layers[g][0]);
                    }
                    const double amp = std::abs(scalar_of(acc));
                    const double log_p = amp > 0 ? 2.0 * (std::log(amp) + node.m.log_scale)
                                                 : -std::numeric_limits<double>::infinity();
                    for (std::size_t i : p.members) slots[i].log_p = log_p;
                }
            }
        }
        if (b + 1 < nb) nodes = std::move(next);
    }

    SampleBatch batch;
    for (auto& s : slots) {
        if (s.aborted) {
            ++batch.stats.aborts;
            batch.abort_reasons.push_back(s.reason);
            continue;
        }
        SampleRecord r;
        r.index = s.index;
        r.bits = std::move(s.bits);
        r.log_p = s.log_p;
        r.log_q = s.log_q;
        r.omega = std::exp(r.log_p - r.log_q);
        if (options.instance) {
            std::vector<int> z(n);
            for (int v = 0; v < n; ++v) z[v] = r.bits[v] ? -1 : 1;
            r.energy = cost(*options.instance, z);
        }
        batch.records.push_back(std::move(r));
    }
    batch.stats.num_samples = batch.records.size();
    return batch;
}

SampleRecord sample_one(const TNState& state, const BoundaryEnvs& envs, std::uint64_t index, std::uint64_t seed,
                        const SamplerOptions& options) {
    SampleBatch b = draw_samples(state, envs, index, 1, seed, options);
    if (b.records.empty()) throw SamplerError("sample aborted: " + b.abort_reasons.front());
    return std::move(b.records.front());
}

BatchStats normalize_batch(std::vector<SampleRecord>& records, std::size_t aborts) {
    BatchStats st;
    st.aborts = aborts;
    st.num_samples = records.size();
    if (records.empty()) return st;
    double mean = 0;
    for (const auto& r : records) mean += r.omega;
    mean /= static_cast<double>(records.size());
    double var = 0, var_t = 0;
    for (auto& r : records) {
        r.omega_tilde = mean > 0 ? r.omega / mean : 0.0;
        var += (r.omega - mean) * (r.omega - mean);
        var_t += (*r.omega_tilde - 1.0) * (*r.omega_tilde - 1.0);
    }
    st.mean_omega = mean;
    st.var_omega = var / static_cast<double>(records.size());
    st.var_omega_tilde = var_t / static_cast<double>(records.size());
    return st;
}

SampleBatch sample_batch(const TNState& state, const ColumnPartition& partition, std::size_t num_samples,
                         std::uint64_t seed, const SamplerOptions& options) {
    if (num_samples < 1) throw SamplerError("num_samples must be >= 1");
    const BoundaryEnvs envs = build_norm_envs(state, partition, options.norm);
    SampleBatch batch = draw_samples(state, envs, 0, num_samples, seed, options);
    batch.stats = normalize_batch(batch.records, batch.stats.aborts);
    return batch;
}

Histogram make_histogram(const std::vector<double>& values, int bins) {
    Histogram h;
    if (values.empty() || bins < 1) return h;
    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    if (hi <= lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    for (int k = 0; k <= bins; ++k) h.edges.push_back(lo + (hi - lo) * k / bins);
    h.counts.assign(bins, 0);
    for (double x : values) {
        int k = static_cast<int>((x - lo) / (hi - lo) * bins);
        h.counts[std::clamp(k, 0, bins - 1)]++;
    }
    return h;
}

Histogram integer_histogram(const std::vector<int>& values) {
    Histogram h;
    if (values.empty()) return h;
    const int lo = *std::min_element(values.begin(), values.end());
    const int hi = *std::max_element(values.begin(), values.end());
    for (int k = lo; k <= hi + 1; ++k) h.edges.push_back(k - 0.5);
    h.counts.assign(hi - lo + 1, 0);
    for (int x : values) h.counts[x - lo]++;
    return h;
}

WeightDiagnostics weight_diagnostics(const std::vector<SampleRecord>& records, int bins) {
    WeightDiagnostics d;
    if (records.empty()) return d;
    std::vector<SampleRecord> copy = records;
    const BatchStats st = normalize_batch(copy);
    d.mean_omega = st.mean_omega;
    d.var_omega = st.var_omega;
    d.var_omega_tilde = st.var_omega_tilde;
    std::vector<double> w, wt;
    std::vector<int> e;
    for (const auto& r : copy) {
        w.push_back(r.omega);
        wt.push_back(*r.omega_tilde);
        e.push_back(r.energy);
    }
    d.omega = make_histogram(w, bins);
    d.omega_tilde = make_histogram(wt, bins);
    d.energy = integer_histogram(e);
    return d;
}

std::string bitstring(const SampleRecord& record) {
    std::string s;
    for (auto b : record.bits) s.push_back(b ? '1' : '0');
    return s;
}

void write_samples_csv(std::ostream& out, const std::vector<SampleRecord>& records) {
    out << "sample_index,bitstring,energy,log_P,log_Q,omega,omega_tilde\n";
    out << std::setprecision(17);
    for (const auto& r : records) {
        out << r.index << ',' << bitstring(r) << ',' << r.energy << ',' << r.log_p << ',' << r.log_q << ','
            << r.omega << ',';
        if (r.omega_tilde) out << *r.omega_tilde;
        out << '\n';
    }
}

double envs_log_norm(const TNState& state, const BoundaryEnvs& envs) {
    const auto layouts = column_layouts(state.lattice(), envs.partition);
    const ColumnTensors ct = column_tensors(state, layouts[0]);
    const BoundaryMps m = empty_mps(false);
    GroupChain chain;
    chain.col = &layouts[0];
    chain.ct = &ct;
    chain.m = &m;
    chain.M = envs.norm.empty() ? nullptr : &envs.norm[0];
    Tensor env = chain.top();
    for (std::size_t g = 0; g < layouts[0].vertices.size(); ++g) env = chain.absorb(env, g, -1);
    env = contract(env, chain.bottom());
    const double z = scalar_of(env).real();
    return std::log(z) + (chain.M ? chain.M->log_scale : 0.0);
}

}  // namespace qaoatn
