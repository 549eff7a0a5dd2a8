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

#include "qaoatn/tn_state.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "qaoatn/log.hpp"

namespace qaoatn {

namespace {

// Canonical leg order of a site tensor: physical leg, then bonds in
// neighbor order.
std::vector<IndexId> site_order(const Lattice& lattice, int v) {
    std::vector<IndexId> order{phys_id(v)};
    for (const auto& nb : lattice.neighbors(v)) order.push_back(bond_id(nb.edge));
    return order;
}

bool is_unitary(const MatrixC& m) {
    const MatrixC d = m.adjoint() * m - MatrixC::Identity(m.cols(), m.cols());
    return d.norm() < 1e-10;
}

template <class T>
void write_le(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T read_le(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw TensorNetworkError("truncated tensor-network checkpoint");
    return value;
}

}  // namespace

TNState::TNState(Lattice lattice, int chi_max, std::vector<Tensor> sites)
    : lattice_(std::move(lattice)), chi_max_(chi_max), sites_(std::move(sites)) {}

TNState TNState::product(const Lattice& lattice, int chi_max, const std::vector<std::array<cplx, 2>>& local) {
    if (chi_max < 0) throw TensorNetworkError("chi_max must be >= 1 (or 0 for uncapped)");
    if (static_cast<int>(local.size()) != lattice.num_vertices()) {
        throw TensorNetworkError("one local state per vertex required");
    }
    std::vector<Tensor> sites;
    for (int v = 0; v < lattice.num_vertices(); ++v) {
        std::vector<Index> inds{{phys_id(v), 2}};
        for (const auto& nb : lattice.neighbors(v)) inds.push_back({bond_id(nb.edge), 1});
        sites.emplace_back(std::move(inds), std::vector<cplx>{local[v][0], local[v][1]});
    }
    return TNState(lattice, chi_max, std::move(sites));
}

TNState TNState::init_plus(const Lattice& lattice, int chi_max) {
    const cplx h(1.0 / std::sqrt(2.0), 0.0);
    return product(lattice, chi_max, std::vector<std::array<cplx, 2>>(lattice.num_vertices(), {h, h}));
}

TNState TNState::basis(const Lattice& lattice, int chi_max, const std::vector<int>& bits) {
    if (static_cast<int>(bits.size()) != lattice.num_vertices()) throw TensorNetworkError("one bit per vertex required");
    std::vector<std::array<cplx, 2>> local;
    for (int b : bits) local.push_back(b ? std::array<cplx, 2>{0.0, 1.0} : std::array<cplx, 2>{1.0, 0.0});
    return product(lattice, chi_max, local);
}

void TNState::set_site(int v, Tensor t) {
    const auto order = site_order(lattice_, v);
    if (t.rank() != order.size()) throw TensorNetworkError("site tensor rank does not match the lattice");
    sites_.at(v) = t.permuted(order);
}

std::int64_t TNState::bond_dim(int edge) const {
    const auto& e = lattice_.edges().at(edge);
    return sites_[e.a].dim(bond_id(edge));
}

int TNState::max_bond_dim() const {
    std::int64_t d = 1;
    for (int e = 0; e < lattice_.num_edges(); ++e) d = std::max(d, bond_dim(e));
    return static_cast<int>(d);
}

std::vector<cplx> TNState::to_dense(std::size_t max_entries) const {
    const int n = num_sites();
    if (n > 30) throw TensorNetworkError("dense contraction limited to 30 qubits");
    const ColumnPartition part = column_partition(lattice_);
    Tensor acc;
    for (const auto& col : part.columns) {
        for (int v : col) {
            std::size_t out = acc.size() * sites_[v].size();
            for (const auto& ix : sites_[v].indices()) {
                if (acc.has(ix.id)) out /= static_cast<std::size_t>(ix.dim) * static_cast<std::size_t>(ix.dim);
            }
            if (out > max_entries) throw TensorNetworkError("dense contraction intermediate too large");
            acc = contract(acc, sites_[v]);
        }
    }
    std::vector<IndexId> order;
    for (int v = n - 1; v >= 0; --v) order.push_back(phys_id(v));
    return acc.permuted(order).storage();
}

void TNState::save(std::ostream& out) const {
    out.write("QTNS", 4);
    write_le<std::int32_t>(out, num_sites());
    write_le<std::int32_t>(out, chi_max_);
    for (const auto& t : sites_) {
        write_le<std::int32_t>(out, static_cast<std::int32_t>(t.rank()));
        for (const auto& ix : t.indices()) {
            write_le<std::int64_t>(out, ix.id);
            write_le<std::int64_t>(out, ix.dim);
        }
        for (const auto& z : t.storage()) {
            write_le<double>(out, z.real());
            write_le<double>(out, z.imag());
        }
    }
}

TNState TNState::load(std::istream& in, const Lattice& lattice) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "QTNS", 4) != 0) throw TensorNetworkError("not a tensor-network checkpoint");
    const int n = read_le<std::int32_t>(in);
    const int chi = read_le<std::int32_t>(in);
    if (n != lattice.num_vertices()) throw TensorNetworkError("checkpoint does not match the lattice");
    std::vector<Tensor> sites;
    for (int v = 0; v < n; ++v) {
        const int rank = read_le<std::int32_t>(in);
        std::vector<Index> inds;
        for (int k = 0; k < rank; ++k) {
            const auto id = read_le<std::int64_t>(in);
            const auto dim = read_le<std::int64_t>(in);
            inds.push_back({id, dim});
        }
        Tensor t(std::move(inds));
        for (auto& z : t.storage()) {
            const double re = read_le<double>(in);
            const double im = read_le<double>(in);
            z = {re, im};
        }
        sites.push_back(std::move(t));
    }
    TNState st(lattice, chi, std::vector<Tensor>(n));
    for (int v = 0; v < n; ++v) st.set_site(v, std::move(sites[v]));
    return st;
}

GateReport apply_gate(TNState& state, BPCache& bp, const Gate& gate) {
    const Lattice& lat = state.lattice();
    if (!is_unitary(gate.matrix)) warn("applying a non-unitary gate '" + gate.name + "'");
    GateReport report;
    if (gate.sites.size() == 1) {
        const int v = gate.sites[0];
        if (v < 0 || v >= state.num_sites()) throw TensorNetworkError("gate site out of range");
        if (gate.matrix.rows() != 2 || gate.matrix.cols() != 2) throw TensorNetworkError("1-qubit gate must be 2x2");
        state.set_site(v, apply_matrix(state.site(v), phys_id(v), gate.matrix.transpose()));
        return report;
    }
    if (gate.sites.size() != 2) throw TensorNetworkError("only 1- and 2-qubit gates are supported");
    if (gate.matrix.rows() != 4 || gate.matrix.cols() != 4) throw TensorNetworkError("2-qubit gate must be 4x4");
    const int s[2] = {gate.sites[0], gate.sites[1]};
    const int e = lat.edge_index(s[0], s[1]);
    if (e < 0) {
        std::ostringstream msg;
        msg << "two-qubit gate on non-edge (" << s[0] << ", " << s[1] << ")";
        throw TensorNetworkError(msg.str());
    }
    const IndexId bond = bond_id(e);

    struct Side {
        std::vector<IndexId> ext;           // external bond ids
        std::vector<MatrixC> inv_sqrt;      // matching environment roots
        Tensor q;                           // isometry over the external bonds
        Tensor r;                           // reduced tensor (link, phys, bond)
        IndexId link = 0;
        bool reduced = false;
    } side[2];

    for (int k = 0; k < 2; ++k) {
        const int v = s[k], other = s[1 - k];
        Tensor t = state.site(v);
        for (const auto& nb : lat.neighbors(v)) {
            if (nb.vertex == other) continue;
            const auto roots = hermitian_roots(bp.message(lat, nb.vertex, v));
            t = apply_matrix(t, bond_id(nb.edge), roots.sqrt);
            side[k].ext.push_back(bond_id(nb.edge));
            side[k].inv_sqrt.push_back(roots.inv_sqrt);
        }
        if (side[k].ext.empty()) {
            side[k].r = std::move(t);
        } else {
            side[k].link = new_link_id();
            QrResult f = qr(t, side[k].ext, side[k].link);
            side[k].q = std::move(f.q);
            side[k].r = std::move(f.r);
            side[k].reduced = true;
        }
    }

    Tensor theta = contract(side[0].r, side[1].r);
    {
        const IndexId rows[2] = {phys_id(s[0]), phys_id(s[1])};
        std::vector<Index> cols;
        const MatrixC m = to_matrix(theta, rows, &cols);
        theta = from_matrix(gate.matrix * m, {{rows[0], 2}, {rows[1], 2}}, cols);
    }

    std::vector<IndexId> left_rows{phys_id(s[0])};
    if (side[0].reduced) left_rows.push_back(side[0].link);
    SvdOptions opts;
    opts.max_rank = state.chi_max();
    SvdResult f = svd(theta, left_rows, bond, opts);
    report.discarded_weight = f.discarded_weight;
    report.pruned_weight = f.pruned_weight;
    report.bond_dim = f.link.dim;

    Eigen::VectorXcd root(f.link.dim);
    double lambda_sum = 0;
    for (std::int64_t k = 0; k < f.link.dim; ++k) {
        root[k] = std::sqrt(f.s[k]);
        lambda_sum += f.s[k];
    }
    const MatrixC root_diag = root.asDiagonal();
    Tensor halves[2] = {apply_matrix(f.u, bond, root_diag), apply_matrix(f.v, bond, root_diag)};

    for (int k = 0; k < 2; ++k) {
        Tensor t = side[k].reduced ? contract(side[k].q, halves[k]) : std::move(halves[k]);
        for (std::size_t x = 0; x < side[k].ext.size(); ++x) {
            t = apply_matrix(t, side[k].ext[x], side[k].inv_sqrt[x]);
        }
        state.set_site(s[k], std::move(t));
    }

    if (!(lambda_sum > 0)) throw TensorNetworkError("two-qubit gate produced a zero tensor");
    MatrixC msg = MatrixC::Zero(f.link.dim, f.link.dim);
    for (std::int64_t k = 0; k < f.link.dim; ++k) msg(k, k) = f.s[k] / lambda_sum;
    bp.messages[2 * e] = msg;
    bp.messages[2 * e + 1] = msg;
    bp.converged = false;
    return report;
}

}  // namespace qaoatn
