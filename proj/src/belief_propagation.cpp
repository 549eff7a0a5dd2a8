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

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <sstream>

#include "qaoatn/tn_state.hpp"

namespace qaoatn {

namespace {

// Contraction of site `from` with its conjugate and all incoming messages
// except the one from `to`, trace-normalized.
MatrixC compute_message(const TNState& state, const std::vector<MatrixC>& msgs, int from, int to) {
    const Lattice& lat = state.lattice();
    const int e = lat.edge_index(from, to);
    const Tensor& t = state.site(from);
    Tensor x = t;
    for (const auto& nb : lat.neighbors(from)) {
        if (nb.vertex == to) continue;
        x = apply_matrix(x, bond_id(nb.edge), msgs[BPCache::slot(lat, nb.vertex, from)]);
    }
    Tensor y = t.conj();
    y.relabel(bond_id(e), prime(bond_id(e)));
    const Tensor r = contract(x, y).permuted({bond_id(e), prime(bond_id(e))});
    const auto d = r.indices()[0].dim;
    MatrixC m = Eigen::Map<const MatrixCR>(r.data(), d, d);
    m = 0.5 * (m + m.adjoint()).eval();
    const double tr = m.trace().real();
    if (!(tr > 0) || !std::isfinite(tr)) {
        std::ostringstream os;
        os << "BP message " << from << " -> " << to << " has non-positive trace";
        throw TensorNetworkError(os.str());
    }
    return m / tr;
}

bool cache_matches(const TNState& state, const BPCache& bp) {
    const Lattice& lat = state.lattice();
    if (static_cast<int>(bp.messages.size()) != 2 * lat.num_edges()) return false;
    for (int e = 0; e < lat.num_edges(); ++e) {
        const auto d = state.bond_dim(e);
        for (int k = 0; k < 2; ++k) {
            if (bp.messages[2 * e + k].rows() != d || bp.messages[2 * e + k].cols() != d) return false;
        }
    }
    return true;
}

// Diagonal of the BP reduced density matrix over a tree-shaped region, with
// complex entries (the imaginary parts vanish up to rounding).
std::vector<cplx> region_diagonal(const TNState& state, const BPCache& bp, const std::vector<int>& region) {
    const Lattice& lat = state.lattice();
    const int k = static_cast<int>(region.size());
    if (k < 1 || k > 3) throw TensorNetworkError("BP regions hold one to three sites");
    auto in_region = [&](int v) { return std::find(region.begin(), region.end(), v) != region.end(); };
    for (int v : region) {
        if (v < 0 || v >= lat.num_vertices()) throw TensorNetworkError("region site out of range");
        if (std::count(region.begin(), region.end(), v) != 1) throw TensorNetworkError("repeated region site");
    }

    // The center touches every other region site.
    int center = -1;
    for (int c : region) {
        bool ok = true;
        for (int v : region) {
            if (v != c && !lat.has_edge(v, c)) ok = false;
        }
        if (ok) {
            center = c;
            break;
        }
    }
    if (center < 0) throw TensorNetworkError("BP region must be a star around one site");

    // Ket copies with environments on the outer bonds; bra copies with the
    // region's internal bonds primed.
    std::vector<Tensor> ket(k), bra(k);
    for (int r = 0; r < k; ++r) {
        const int v = region[r];
        Tensor x = state.site(v);
        Tensor y = state.site(v).conj();
        for (const auto& nb : lat.neighbors(v)) {
            if (in_region(nb.vertex)) {
                y.relabel(bond_id(nb.edge), prime(bond_id(nb.edge)));
            } else {
                x = apply_matrix(x, bond_id(nb.edge), bp.message(lat, nb.vertex, v));
            }
        }
        ket[r] = std::move(x);
        bra[r] = std::move(y);
    }

    // Leaf environments E_v(s) with legs (bond to center, primed copy).
    std::vector<std::array<Tensor, 2>> leaf(k);
    for (int r = 0; r < k; ++r) {
        if (region[r] == center) continue;
        for (int s = 0; s < 2; ++s) {
            leaf[r][s] = contract(slice(ket[r], phys_id(region[r]), s), slice(bra[r], phys_id(region[r]), s));
        }
    }

    const int rc = static_cast<int>(std::find(region.begin(), region.end(), center) - region.begin());
    std::vector<cplx> diag(std::size_t{1} << k);
    for (std::size_t idx = 0; idx < diag.size(); ++idx) {
        auto bit = [&](int r) { return static_cast<int>((idx >> (k - 1 - r)) & 1u); };
        Tensor acc = slice(ket[rc], phys_id(center), bit(rc));
        for (int r = 0; r < k; ++r) {
            if (r != rc) acc = contract(acc, leaf[r][bit(r)]);
        }
        acc = contract(acc, slice(bra[rc], phys_id(center), bit(rc)));
        diag[idx] = acc.value();
    }
    return diag;
}

cplx z_expectation(const TNState& state, const BPCache& bp, const std::vector<int>& support) {
    const auto diag = region_diagonal(state, bp, support);
    cplx num = 0, den = 0;
    for (std::size_t idx = 0; idx < diag.size(); ++idx) {
        const int sign = (std::popcount(idx) & 1) ? -1 : 1;
        num += static_cast<double>(sign) * diag[idx];
        den += diag[idx];
    }
    if (std::abs(den) < 1e-300 || !std::isfinite(std::abs(den))) {
        throw TensorNetworkError("zero local norm in a BP expectation value");
    }
    return num / den;
}

}  // namespace

int BPCache::slot(const Lattice& lattice, int from, int to) {
    const int e = lattice.edge_index(from, to);
    if (e < 0) throw TensorNetworkError("no edge between message endpoints");
    return 2 * e + (from < to ? 0 : 1);
}

BPCache initial_messages(const TNState& state) {
    const Lattice& lat = state.lattice();
    BPCache bp;
    for (int e = 0; e < lat.num_edges(); ++e) {
        const auto d = state.bond_dim(e);
        const MatrixC m = MatrixC::Identity(d, d) / static_cast<double>(d);
        bp.messages.push_back(m);
        bp.messages.push_back(m);
    }
    return bp;
}

BPCache run_bp(const TNState& state, const BpOptions& options, const BPCache* warm) {
    const Lattice& lat = state.lattice();
    for (int v = 0; v < lat.num_vertices(); ++v) {
        if (!state.site(v).all_finite()) throw TensorNetworkError("non-finite entries in site tensor");
    }
    BPCache bp = (warm && cache_matches(state, *warm)) ? *warm : initial_messages(state);
    bp.converged = false;
    bp.iterations_used = 0;
    bp.final_delta = 0;
    if (lat.num_edges() == 0) {
        bp.converged = true;
        return bp;
    }
    for (int it = 1; it <= options.max_iters; ++it) {
        double delta = 0;
        std::vector<MatrixC> fresh = options.sequential ? std::vector<MatrixC>{} : bp.messages;
        std::vector<MatrixC>& target = options.sequential ? bp.messages : fresh;
        for (int e = 0; e < lat.num_edges(); ++e) {
            const auto& edge = lat.edges()[e];
            for (int d = 0; d < 2; ++d) {
                const int from = d == 0 ? edge.a : edge.b, to = d == 0 ? edge.b : edge.a;
                MatrixC m = compute_message(state, bp.messages, from, to);
                const MatrixC& old = bp.messages[2 * e + d];
                if (options.damping > 0) {
                    m = (1 - options.damping) * m + options.damping * old;
                    m /= m.trace().real();
                }
                delta = std::max(delta, (m - old).norm());
                target[2 * e + d] = std::move(m);
            }
        }
        if (!options.sequential) bp.messages = std::move(fresh);
        bp.iterations_used = it;
        bp.final_delta = delta;
        if (delta <= options.tolerance) {
            bp.converged = true;
            break;
        }
    }
    return bp;
}

std::vector<double> region_marginal(const TNState& state, const BPCache& bp, const std::vector<int>& region) {
    const auto diag = region_diagonal(state, bp, region);
    std::vector<double> out;
    for (const auto& z : diag) out.push_back(z.real());
    return out;
}

double bp_expectation(const TNState& state, const BPCache& bp, const PauliZTerm& term) {
    return z_expectation(state, bp, term.support).real();
}

cplx bp_energy_complex(const TNState& state, const BPCache& bp, const SpinGlassInstance& instance) {
    cplx e = 0;
    for (const auto& t : cost_operator_terms(instance)) {
        e += static_cast<double>(t.coefficient) * z_expectation(state, bp, t.support);
    }
    return e;
}

double bp_energy(const TNState& state, const BPCache& bp, const SpinGlassInstance& instance) {
    return bp_energy_complex(state, bp, instance).real();
}

double bp_log_norm(const TNState& state, const BPCache& bp) {
    const Lattice& lat = state.lattice();
    double log_z = 0;
    for (int v = 0; v < lat.num_vertices(); ++v) {
        Tensor x = state.site(v);
        for (const auto& nb : lat.neighbors(v)) {
            x = apply_matrix(x, bond_id(nb.edge), bp.message(lat, nb.vertex, v));
        }
        log_z += std::log(contract(x, state.site(v).conj()).value().real());
    }
    for (int e = 0; e < lat.num_edges(); ++e) {
        const MatrixC& a = bp.messages[2 * e];
        const MatrixC& b = bp.messages[2 * e + 1];
        log_z -= std::log(a.cwiseProduct(b).sum().real());
    }
    return log_z;
}

EdgeSpectrum edge_entropy(const Lattice& lattice, const BPCache& bp, int edge) {
    if (edge < 0 || edge >= lattice.num_edges()) throw TensorNetworkError("edge index out of range");
    const MatrixC x = hermitian_roots(bp.messages[2 * edge]).sqrt;
    const MatrixC y = hermitian_roots(bp.messages[2 * edge + 1]).sqrt;
    const MatrixC a = x.transpose() * y;
    Eigen::JacobiSVD<MatrixC> dec(a);
    const Eigen::VectorXd s = dec.singularValues();
    const double total = s.squaredNorm();
    if (!(total > 0)) throw TensorNetworkError("all-zero bond spectrum");
    EdgeSpectrum out;
    out.edge = edge;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        const double l = s[k] / std::sqrt(total);
        out.lambda.push_back(l);
        const double w = l * l;
        if (w > 0) out.entropy -= w * std::log2(w);
    }
    out.entropy = std::max(out.entropy, 0.0);
    return out;
}

CutSpec cut_entropy(const Lattice& lattice, const BPCache& bp, const std::vector<int>& cut_edges) {
    CutSpec cut;
    cut.edges = cut_edges;
    for (int e : cut_edges) {
        const double s = edge_entropy(lattice, bp, e).entropy;
        cut.entropies.push_back(s);
        cut.s_cut += s;
    }
    return cut;
}

}  // namespace qaoatn
