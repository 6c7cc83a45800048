// Copyright 2026 The gaugenoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gaugenoise/models.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace gaugenoise {
namespace {

// Spin-1/2 link operators.
DenseMatrix spin_z() { return 0.5 * pauli::z(); }
DenseMatrix spin_plus() { return pauli::plus(); }

DenseMatrix boson_annihilation(int n_max) {
  DenseMatrix a = DenseMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

DenseMatrix boson_number(int n_max) {
  DenseMatrix n = DenseMatrix::Zero(n_max + 1, n_max + 1);
  for (int k = 0; k <= n_max; ++k) n(k, k) = k;
  return n;
}

DenseMatrix boson_parity(int n_max) {
  DenseMatrix p = DenseMatrix::Zero(n_max + 1, n_max + 1);
  for (int k = 0; k <= n_max; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return p;
}

// Z2 link operators in the tau^x eigenbasis.
DenseMatrix tau_x() { return pauli::z(); }
DenseMatrix tau_z() { return pauli::x(); }

class Embedder {
 public:
  explicit Embedder(const LatticeSpec& lat) : lat_(lat), dims_(lat.local_dims()) {}

  OperatorMatrix site(const DenseMatrix& op, int j) const {
    return embed_site_operator(local_operator(op), lat_.site_factor(j), dims_, lat_.max_dim);
  }
  OperatorMatrix link(const DenseMatrix& op, int j) const {
    return embed_site_operator(local_operator(op), lat_.link_factor(j), dims_, lat_.max_dim);
  }
  OperatorMatrix identity() const { return OperatorMatrix::identity(dims_); }
  OperatorMatrix zero() const { return OperatorMatrix::zero(dims_); }

 private:
  const LatticeSpec& lat_;
  std::vector<int> dims_;
};

OperatorMatrix hermitian_part_plus_hc(const OperatorMatrix& t) {
  OperatorMatrix h = t + t.adjoint();
  return {h.sparse(), {h.local_dims().begin(), h.local_dims().end()}, true};
}

OperatorMatrix mark_hermitian(const OperatorMatrix& m) {
  return {m.sparse(), {m.local_dims().begin(), m.local_dims().end()}, true};
}

// Integer eigenvalues of a local operator acting on (link, site, link).
std::vector<int> integer_spectrum(const DenseMatrix& local) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(local);
  std::set<int> values;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double v = solver.eigenvalues()(k);
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9) throw Error("generator has a non-integer eigenvalue");
    values.insert(static_cast<int>(r));
  }
  return {values.begin(), values.end()};
}

DenseMatrix kron3(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c) {
  DenseMatrix ab(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) ab.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  DenseMatrix out(ab.rows() * c.rows(), ab.cols() * c.cols());
  for (Eigen::Index i = 0; i < ab.rows(); ++i)
    for (Eigen::Index j = 0; j < ab.cols(); ++j)
      out.block(i * c.rows(), j * c.cols(), c.rows(), c.cols()) = ab(i, j) * c;
  return out;
}

std::vector<std::vector<int>> u1_spectra(const LatticeSpec& lat) {
  std::vector<std::vector<int>> out;
  const DenseMatrix id = pauli::identity(2);
  for (int j = 0; j < lat.L; ++j) {
    DenseMatrix occ = 0.5 * (pauli::z() + id);
    DenseMatrix g = kron3(spin_z(), id, id) + kron3(id, id, spin_z()) + kron3(id, occ, id);
    out.push_back(integer_spectrum(staggered_sign(j) * g));
  }
  return out;
}

std::vector<std::vector<int>> z2_spectra(const LatticeSpec& lat, bool pseudo, const std::vector<int>& target) {
  std::vector<std::vector<int>> out;
  const int n_max = lat.matter_dim - 1;
  const DenseMatrix idl = pauli::identity(2);
  const DenseMatrix ids = pauli::identity(lat.matter_dim);
  for (int j = 0; j < lat.L; ++j) {
    DenseMatrix g = pseudo ? DenseMatrix(kron3(tau_x(), ids, tau_x()) +
                                         2.0 * target[static_cast<std::size_t>(j)] * kron3(idl, boson_number(n_max), idl))
                           : kron3(tau_x(), boson_parity(n_max), tau_x());
    out.push_back(integer_spectrum(g));
  }
  return out;
}

}  // namespace

void LatticeSpec::validate() const {
  if (L < 2 || L % 2 != 0) {
    std::ostringstream os;
    os << "lattice: L must be even and >= 2 (got " << L << ")";
    throw ValidationError(os.str());
  }
  if (matter_dim < 2 || link_dim != 2) throw ValidationError("lattice: unsupported local dimensions");
  // Compare in floating point first so the product cannot overflow.
  const double approx = std::pow(static_cast<double>(matter_dim * link_dim), L);
  if (approx > static_cast<double>(max_dim)) {
    std::ostringstream os;
    os << "lattice: Hilbert dimension " << approx << " exceeds the configured maximum " << max_dim;
    throw CapacityError(os.str());
  }
}

std::vector<int> LatticeSpec::local_dims() const {
  std::vector<int> dims;
  for (int j = 0; j < L; ++j) {
    dims.push_back(matter_dim);
    dims.push_back(link_dim);
  }
  return dims;
}

std::size_t LatticeSpec::dim() const {
  std::size_t d = 1;
  for (int k : local_dims()) d *= static_cast<std::size_t>(k);
  return d;
}

std::vector<OperatorMatrix> build_u1_generators(const LatticeSpec& lattice) {
  lattice.validate();
  Embedder e(lattice);
  std::vector<OperatorMatrix> gens;
  for (int j = 0; j < lattice.L; ++j) {
    OperatorMatrix occ = 0.5 * (e.site(pauli::z(), j) + e.identity());
    OperatorMatrix g = e.link(spin_z(), j - 1) + e.link(spin_z(), j) + occ;
    gens.push_back(mark_hermitian(static_cast<double>(staggered_sign(j)) * g));
  }
  return gens;
}

ModelSystem build_u1_qlm(const LatticeSpec& lattice_in, double J, double mu) {
  LatticeSpec lattice = lattice_in;
  lattice.matter_dim = 2;
  lattice.validate();
  Embedder e(lattice);
  OperatorMatrix h = e.zero();
  for (int j = 0; j < lattice.L; ++j) {
    OperatorMatrix hop = e.site(pauli::minus(), j) * e.link(spin_plus(), j) * e.site(pauli::minus(), j + 1);
    h += J * hermitian_part_plus_hc(hop);
    h += (mu / 2.0) * e.site(pauli::z(), j);
  }

  ModelSystem m;
  m.lattice = lattice;
  m.params = U1Params{J, mu};
  m.hamiltonian = mark_hermitian(h);
  m.generators = build_u1_generators(lattice);
  m.target_sector.assign(static_cast<std::size_t>(lattice.L), 0);
  m.generator_spectra = u1_spectra(lattice);
  m.protection.sequence.assign(static_cast<std::size_t>(lattice.L), Rational(0));
  m.protection_term = e.zero();
  return m;
}

std::vector<OperatorMatrix> build_z2_generators(const LatticeSpec& lattice) {
  lattice.validate();
  Embedder e(lattice);
  const int n_max = lattice.matter_dim - 1;
  std::vector<OperatorMatrix> gens;
  for (int j = 0; j < lattice.L; ++j) {
    OperatorMatrix g = e.site(boson_parity(n_max), j) * e.link(tau_x(), j - 1) * e.link(tau_x(), j);
    gens.push_back(mark_hermitian(g));
  }
  return gens;
}

std::vector<OperatorMatrix> build_z2_pseudogenerators(const LatticeSpec& lattice, const std::vector<int>& target) {
  lattice.validate();
  if (target.size() != static_cast<std::size_t>(lattice.L)) {
    throw ValidationError("pseudogenerators: target sector length does not match L");
  }
  for (int g : target) {
    if (g != 1 && g != -1) throw ValidationError("pseudogenerators: Z2 target values must be +1 or -1");
  }
  Embedder e(lattice);
  const int n_max = lattice.matter_dim - 1;
  std::vector<OperatorMatrix> ws;
  for (int j = 0; j < lattice.L; ++j) {
    OperatorMatrix w = e.link(tau_x(), j - 1) * e.link(tau_x(), j) +
                       (2.0 * target[static_cast<std::size_t>(j)]) * e.site(boson_number(n_max), j);
    ws.push_back(mark_hermitian(w));
  }
  return ws;
}

ModelSystem build_z2_lgt(const LatticeSpec& lattice_in, double J, double h, int n_max) {
  if (n_max < 1) throw ValidationError("z2 model: n_max must be >= 1");
  LatticeSpec lattice = lattice_in;
  lattice.matter_dim = n_max + 1;
  lattice.validate();
  Embedder e(lattice);
  const DenseMatrix a = boson_annihilation(n_max);
  const DenseMatrix ad = a.adjoint();
  OperatorMatrix ham = e.zero();
  for (int j = 0; j < lattice.L; ++j) {
    OperatorMatrix hop = e.site(ad, j) * e.link(tau_z(), j) * e.site(a, j + 1);
    ham += J * hermitian_part_plus_hc(hop);
    ham -= h * e.link(tau_x(), j);
  }

  ModelSystem m;
  m.lattice = lattice;
  m.params = Z2Params{J, h, n_max};
  m.hamiltonian = mark_hermitian(ham);
  m.generators = build_z2_generators(lattice);
  m.target_sector.assign(static_cast<std::size_t>(lattice.L), 1);
  m.pseudogenerators = build_z2_pseudogenerators(lattice, m.target_sector);
  m.generator_spectra = z2_spectra(lattice, false, m.target_sector);
  m.pseudogenerator_spectra = z2_spectra(lattice, true, m.target_sector);
  m.protection.sequence.assign(static_cast<std::size_t>(lattice.L), Rational(0));
  m.protection_term = e.zero();
  return m;
}

OperatorMatrix build_protection_term(const std::vector<OperatorMatrix>& ops, const ProtectionSpec& spec) {
  if (ops.empty()) throw ValidationError("protection term: no generators supplied");
  if (spec.sequence.size() != ops.size()) {
    std::ostringstream os;
    os << "protection term: sequence has " << spec.sequence.size() << " entries but there are " << ops.size()
       << " generators";
    throw ValidationError(os.str());
  }
  if (spec.V < 0.0 || !std::isfinite(spec.V)) throw ValidationError("protection term: V must be finite and >= 0");
  const auto& dims = ops.front().local_dims();
  OperatorMatrix out = OperatorMatrix::zero({dims.begin(), dims.end()});
  if (spec.V == 0.0) return out;
  for (std::size_t j = 0; j < ops.size(); ++j) {
    const double c = to_double(spec.sequence[j]);
    if (c != 0.0) out += (spec.V * c) * ops[j];
  }
  return mark_hermitian(out);
}

ModelSystem with_protection(const ModelSystem& model, const ProtectionSpec& spec) {
  ModelSystem m = model;
  m.protection = spec;
  if (spec.generator_kind == GeneratorKind::Pseudo) {
    if (model.pseudogenerators.empty()) {
      throw ValidationError("protection: pseudogenerator protection is only defined for the Z2 model");
    }
    m.protection_term = build_protection_term(model.pseudogenerators, spec);
  } else {
    m.protection_term = build_protection_term(model.generators, spec);
  }
  return m;
}

ComplianceResult check_sequence_compliance(const std::vector<Rational>& sequence,
                                           const std::vector<std::vector<int>>& spectra,
                                           const std::vector<int>& target, std::size_t max_tuples) {
  const std::size_t L = sequence.size();
  if (spectra.size() != L || target.size() != L) {
    throw ValidationError("compliance: sequence, spectra and target must have equal length");
  }
  double total = 1.0;
  for (const auto& s : spectra) {
    if (s.empty()) throw ValidationError("compliance: empty per-site spectrum");
    total *= static_cast<double>(s.size());
  }
  if (total > static_cast<double>(max_tuples)) {
    std::ostringstream os;
    os << "compliance: " << total << " sector tuples exceed the enumeration bound " << max_tuples;
    throw CapacityError(os.str());
  }

  ComplianceResult result;
  std::vector<std::size_t> digit(L, 0);
  std::vector<int> g(L);
  while (true) {
    bool is_target = true;
    Rational sum(0);
    for (std::size_t j = 0; j < L; ++j) {
      g[j] = spectra[j][digit[j]];
      if (g[j] != target[j]) is_target = false;
      sum += sequence[j] * Rational(g[j] - target[j]);
    }
    ++result.tuples_checked;
    if (!is_target && sum == Rational(0)) {
      result.compliant = false;
      result.witness = g;
      return result;
    }
    std::size_t k = L;
    while (k > 0) {
      --k;
      if (++digit[k] < spectra[k].size()) break;
      digit[k] = 0;
      if (k == 0) return result;
    }
    if (L == 0) return result;
  }
}

InitialState build_initial_state(InitialStateKind kind, const ModelSystem& model) {
  const auto& lat = model.lattice;
  auto basis = [](int d, int idx) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
    v(idx) = 1.0;
    return v;
  };
  InitialState st{kind, {}, {}};
  switch (kind) {
    case InitialStateKind::U1Vacuum:
    case InitialStateKind::U1ChargeProliferated: {
      if (model.kind() != ModelKind::U1QuantumLink) {
        throw ValidationError("initial state " + to_string(kind) + " requires the U(1) model");
      }
      const bool filled = kind == InitialStateKind::U1ChargeProliferated;
      for (int j = 0; j < lat.L; ++j) {
        st.factors.push_back(basis(2, filled ? 0 : 1));
        // Vacuum: odd links (1-based) point down, even links up. Proliferated: all down.
        const bool down = filled || (j % 2 == 0);
        st.factors.push_back(basis(2, down ? 1 : 0));
      }
      break;
    }
    case InitialStateKind::Z2ChargeDensityWave: {
      if (model.kind() != ModelKind::Z2Gauge) {
        throw ValidationError("initial state " + to_string(kind) + " requires the Z2 model");
      }
      std::vector<int> occupation(static_cast<std::size_t>(lat.L));
      for (int j = 0; j < lat.L; ++j) occupation[static_cast<std::size_t>(j)] = (j % 2 == 0) ? 1 : 0;
      // Walk the ring from link (L,1) = +1, solving G_j = g_j^tar for link (j,j+1).
      std::vector<int> link(static_cast<std::size_t>(lat.L));
      int previous = +1;
      for (int j = 0; j < lat.L; ++j) {
        const int parity = (occupation[static_cast<std::size_t>(j)] % 2 == 0) ? 1 : -1;
        link[static_cast<std::size_t>(j)] = model.target_sector[static_cast<std::size_t>(j)] * parity * previous;
        previous = link[static_cast<std::size_t>(j)];
      }
      if (link.back() != +1) {
        throw ValidationError(
            "initial state z2_cdw: Gauss-law constraints cannot close around the ring (the product of "
            "target charges requires an even particle number)");
      }
      for (int j = 0; j < lat.L; ++j) {
        st.factors.push_back(basis(lat.matter_dim, occupation[static_cast<std::size_t>(j)]));
        st.factors.push_back(basis(2, link[static_cast<std::size_t>(j)] == 1 ? 0 : 1));
      }
      break;
    }
  }
  st.rho = product_density_matrix(st.factors);
  const double eps = expectation(st.rho, violation_operator(model));
  if (std::abs(eps) > 1e-12) throw Error("initial state is not in the target sector");
  return st;
}

OperatorMatrix violation_operator(const ModelSystem& model) {
  const auto& lat = model.lattice;
  Embedder e(lat);
  OperatorMatrix out = e.zero();
  for (std::size_t j = 0; j < model.generators.size(); ++j) {
    OperatorMatrix d = model.generators[j] - static_cast<double>(model.target_sector[j]) * e.identity();
    out += d * d;
  }
  return mark_hermitian((1.0 / lat.L) * out);
}

OperatorMatrix condensate_operator(const ModelSystem& model) {
  if (model.kind() != ModelKind::U1QuantumLink) {
    throw ValidationError("condensate_operator: the chiral condensate is only defined for the U(1) model");
  }
  const auto& lat = model.lattice;
  Embedder e(lat);
  OperatorMatrix out = 0.5 * e.identity();
  for (int j = 0; j < lat.L; ++j) out += (0.5 / lat.L) * e.site(pauli::z(), j);
  return mark_hermitian(out);
}

std::string to_string(ModelKind kind) {
  return kind == ModelKind::U1QuantumLink ? "u1_qlm" : "z2_lgt";
}

std::string to_string(GeneratorKind kind) { return kind == GeneratorKind::Full ? "full" : "pseudo"; }

std::string to_string(InitialStateKind kind) {
  switch (kind) {
    case InitialStateKind::U1Vacuum:
      return "u1_vacuum";
    case InitialStateKind::U1ChargeProliferated:
      return "u1_charge_proliferated";
    case InitialStateKind::Z2ChargeDensityWave:
      return "z2_cdw";
  }
  return "unknown";
}

InitialStateKind parse_initial_state_kind(const std::string& name) {
  if (name == "u1_vacuum") return InitialStateKind::U1Vacuum;
  if (name == "u1_charge_proliferated") return InitialStateKind::U1ChargeProliferated;
  if (name == "z2_cdw") return InitialStateKind::Z2ChargeDensityWave;
  throw ValidationError("unknown initial state '" + name + "'");
}

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "full") return GeneratorKind::Full;
  if (name == "pseudo") return GeneratorKind::Pseudo;
  throw ValidationError("unknown generator kind '" + name + "'");
}

}  // namespace gaugenoise
