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

#include "gaugenoise/redfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace gaugenoise {

namespace {

void require_dim(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    std::ostringstream os;
    os << what << ": dimension " << got << " does not match eigenbasis dimension " << want;
    throw DimensionError(os.str());
  }
}

std::uint64_t pack(std::uint64_t n, std::int32_t a, std::int32_t b, std::int32_t c, std::int32_t d) {
  return ((static_cast<std::uint64_t>(a) * n + static_cast<std::uint64_t>(b)) * n + static_cast<std::uint64_t>(c)) *
             n +
         static_cast<std::uint64_t>(d);
}

struct CouplingEntry {
  std::int32_t row, col;
  double omega;
  Complex value;
};

}  // namespace

double bath_rate(const NoiseSpec& noise, double omega) {
  if (std::abs(omega) <= kDegeneracyTolerance) omega = 0.0;
  return spectrum_eval(noise, omega);
}

DenseMatrix to_eigenbasis(const OperatorMatrix& op, const HermitianEigensystem& eig) {
  require_dim(op.dim(), eig.dim(), "to_eigenbasis");
  const DenseMatrix au = op.sparse() * eig.eigenvectors;
  return eig.eigenvectors.adjoint() * au;
}

DenseMatrix to_eigenbasis(const DenseMatrix& op, const HermitianEigensystem& eig) {
  require_dim(op.rows(), eig.dim(), "to_eigenbasis");
  return eig.eigenvectors.adjoint() * op * eig.eigenvectors;
}

DenseMatrix from_eigenbasis(const DenseMatrix& op, const HermitianEigensystem& eig) {
  require_dim(op.rows(), eig.dim(), "from_eigenbasis");
  return eig.eigenvectors * op * eig.eigenvectors.adjoint();
}

std::vector<SparseMatrix> eigenbasis_couplings(const CouplingSet& couplings, const HermitianEigensystem& eig) {
  const SparseMatrix u = eig.eigenvectors.sparseView();
  const SparseMatrix ud = u.adjoint();
  std::vector<SparseMatrix> out;
  out.reserve(couplings.size());
  for (const auto& c : couplings.operators) {
    require_dim(c.op.dim(), eig.dim(), "coupling operator");
    SparseMatrix tmp = c.op.sparse() * u;
    SparseMatrix ae = ud * tmp;
    double scale = 0.0;
    for (Eigen::Index k = 0; k < ae.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(ae, k); it; ++it) scale = std::max(scale, std::abs(it.value()));
    }
    const double cut = 1e-13 * std::max(1.0, scale);
    ae.prune([cut](Eigen::Index, Eigen::Index, const Complex& v) { return std::abs(v) > cut; });
    ae.makeCompressed();
    out.push_back(std::move(ae));
  }
  return out;
}

RedfieldTensor::RedfieldTensor(HermitianEigensystem eig, std::vector<DecayEntry> decay,
                               std::vector<JumpEntry> jumps, double secular_cutoff, std::size_t coupling_count)
    : eig_(std::move(eig)),
      decay_(std::move(decay)),
      jumps_(std::move(jumps)),
      cutoff_(secular_cutoff),
      coupling_count_(coupling_count) {
  const Eigen::Index n = eig_.dim();
  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(decay_.size());
  for (const auto& e : decay_) trip.emplace_back(e.row, e.col, e.value);
  decay_matrix_.resize(n, n);
  decay_matrix_.setFromTriplets(trip.begin(), trip.end());
  decay_adjoint_ = decay_matrix_.adjoint();
}

void RedfieldTensor::apply_dissipator(const DenseMatrix& rho, DenseMatrix& out) const {
  out.noalias() = decay_matrix_ * rho;
  out.noalias() += rho * decay_adjoint_;
  out *= -0.5;
  for (const auto& j : jumps_) out(j.a, j.b) += j.value * rho(j.c, j.d);
}

void RedfieldTensor::apply_interaction(double t, const DenseMatrix& rho_tilde, DenseMatrix& out) const {
  const Eigen::Index n = dim();
  Eigen::VectorXcd ph(n);
  for (Eigen::Index a = 0; a < n; ++a) ph(a) = std::polar(1.0, eig_.eigenvalues[static_cast<std::size_t>(a)] * t);
  // rho_cd = e^{-i w_cd t} rho~_cd
  DenseMatrix rho(n, n);
  for (Eigen::Index d = 0; d < n; ++d) {
    for (Eigen::Index c = 0; c < n; ++c) rho(c, d) = std::conj(ph(c)) * ph(d) * rho_tilde(c, d);
  }
  apply_dissipator(rho, out);
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = 0; a < n; ++a) out(a, b) *= ph(a) * std::conj(ph(b));
  }
}

std::vector<TensorEntry> RedfieldTensor::entries() const {
  const auto n = static_cast<std::uint64_t>(dim());
  std::map<std::uint64_t, Complex> acc;
  for (const auto& e : decay_) {
    for (std::int32_t x = 0; x < static_cast<std::int32_t>(n); ++x) {
      acc[pack(n, e.row, x, e.col, x)] += -0.5 * e.value;
      acc[pack(n, x, e.row, x, e.col)] += -0.5 * std::conj(e.value);
    }
  }
  for (const auto& j : jumps_) acc[pack(n, j.a, j.b, j.c, j.d)] += j.value;
  std::vector<TensorEntry> out;
  out.reserve(acc.size());
  for (const auto& [key, v] : acc) {
    if (v == Complex(0.0, 0.0)) continue;
    std::uint64_t k = key;
    const int d = static_cast<int>(k % n);
    k /= n;
    const int c = static_cast<int>(k % n);
    k /= n;
    const int b = static_cast<int>(k % n);
    const int a = static_cast<int>(k / n);
    out.push_back({a, b, c, d, v});
  }
  return out;
}

RedfieldTensor build_redfield_tensor(const HermitianEigensystem& eig, const CouplingSet& couplings,
                                     const NoiseSpec& noise, double secular_cutoff, std::size_t max_entries) {
  noise.validate();
  couplings.validate();
  if (!(secular_cutoff >= 0.0)) throw ValidationError("secular_cutoff must be >= 0");
  const Eigen::Index n = eig.dim();
  const auto& e = eig.eigenvalues;
  const auto ae = eigenbasis_couplings(couplings, eig);

  // Decay part: K = sum_alpha A S A with S acting on the right index pair.
  SparseMatrix k_total(n, n);
  for (const auto& a : ae) {
    SparseMatrix weighted = a;
    for (Eigen::Index col = 0; col < weighted.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(weighted, col); it; ++it) {
        it.valueRef() *= bath_rate(noise, eig.bohr(it.col(), it.row()));
      }
    }
    k_total += a * weighted;
  }
  std::vector<RedfieldTensor::DecayEntry> decay;
  for (Eigen::Index col = 0; col < k_total.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(k_total, col); it; ++it) {
      const double w = eig.bohr(it.row(), it.col());
      if (std::abs(w) > secular_cutoff || it.value() == Complex(0.0, 0.0)) continue;
      decay.push_back({static_cast<std::int32_t>(it.row()), static_cast<std::int32_t>(it.col()), w, it.value()});
    }
  }
  std::sort(decay.begin(), decay.end(),
            [](const auto& x, const auto& y) { return std::tie(x.row, x.col) < std::tie(y.row, y.col); });

  // Jump part: pair (a,c) with (b,d) whenever w_ac and w_bd agree to the cutoff.
  std::vector<std::vector<CouplingEntry>> lists;
  std::size_t budget = 0;
  const double window = secular_cutoff + 1e-12;
  for (const auto& a : ae) {
    std::vector<CouplingEntry> list;
    list.reserve(static_cast<std::size_t>(a.nonZeros()));
    for (Eigen::Index col = 0; col < a.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(a, col); it; ++it) {
        list.push_back({static_cast<std::int32_t>(it.row()), static_cast<std::int32_t>(it.col()),
                        eig.bohr(it.row(), it.col()), it.value()});
      }
    }
    std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) { return x.omega < y.omega; });
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
      while (list[lo].omega < list[i].omega - window) ++lo;
      while (hi < list.size() && list[hi].omega <= list[i].omega + window) ++hi;
      budget += hi - lo;
    }
    if (budget > max_entries) {
      std::ostringstream os;
      os << "redfield tensor: more than " << max_entries << " candidate entries (" << budget
         << " after " << lists.size() + 1 << " of " << ae.size() << " couplings); raise the budget or "
         << "tighten the secular cutoff";
      throw CapacityError(os.str());
    }
    lists.push_back(std::move(list));
  }

  struct Keyed {
    std::uint64_t key;
    RedfieldTensor::JumpEntry entry;
  };
  std::vector<Keyed> raw;
  raw.reserve(budget);
  const auto un = static_cast<std::uint64_t>(n);
  for (const auto& list : lists) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& p = list[i];
      while (list[lo].omega < p.omega - window) ++lo;
      while (hi < list.size() && list[hi].omega <= p.omega + window) ++hi;
      const double sp = bath_rate(noise, p.omega);
      for (std::size_t j = lo; j < hi; ++j) {
        const auto& q = list[j];
        // a = p.row, c = p.col, b = q.row, d = q.col
        const double dw = (e[static_cast<std::size_t>(p.row)] - e[static_cast<std::size_t>(q.row)]) -
                          (e[static_cast<std::size_t>(p.col)] - e[static_cast<std::size_t>(q.col)]);
        if (std::abs(dw) > secular_cutoff) continue;
        const Complex v = 0.5 * p.value * std::conj(q.value) * (sp + bath_rate(noise, q.omega));
        if (v == Complex(0.0, 0.0)) continue;
        raw.push_back({pack(un, p.row, q.row, p.col, q.col), {p.row, q.row, p.col, q.col, dw, v}});
      }
    }
  }
  lists.clear();
  std::sort(raw.begin(), raw.end(), [](const Keyed& x, const Keyed& y) { return x.key < y.key; });
  std::vector<RedfieldTensor::JumpEntry> jumps;
  jumps.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    auto entry = raw[i].entry;
    std::size_t j = i + 1;
    for (; j < raw.size() && raw[j].key == raw[i].key; ++j) entry.value += raw[j].entry.value;
    if (entry.value != Complex(0.0, 0.0)) jumps.push_back(entry);
    i = j;
  }
  return RedfieldTensor(eig, std::move(decay), std::move(jumps), secular_cutoff, couplings.size());
}

RedfieldTensor build_redfield_tensor(const ModelSystem& model, const CouplingSet& couplings, const NoiseSpec& noise,
                                     double secular_cutoff, std::size_t max_entries) {
  return build_redfield_tensor(hermitian_eig(model.system_hamiltonian()), couplings, noise, secular_cutoff,
                               max_entries);
}

DenseMatrix apply_superoperator(const RedfieldTensor& tensor, const DenseMatrix& rho) {
  require_dim(rho.rows(), tensor.dim(), "apply_superoperator");
  require_dim(rho.cols(), tensor.dim(), "apply_superoperator");
  DenseMatrix out;
  tensor.apply_dissipator(rho, out);
  const auto& eig = tensor.eigensystem();
  for (Eigen::Index b = 0; b < rho.cols(); ++b) {
    for (Eigen::Index a = 0; a < rho.rows(); ++a) out(a, b) += Complex(0.0, -eig.bohr(a, b)) * rho(a, b);
  }
  return out;
}

ValidityReport golden_rule_rates(const HermitianEigensystem& eig, const CouplingSet& couplings,
                                 const NoiseSpec& noise, double threshold) {
  noise.validate();
  ValidityReport report;
  report.threshold = threshold;
  if (couplings.empty()) return report;
  couplings.validate();
  std::map<std::pair<int, int>, double> rates;
  for (const auto& a : eigenbasis_couplings(couplings, eig)) {
    for (Eigen::Index col = 0; col < a.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(a, col); it; ++it) {
        const double w = eig.bohr(it.row(), it.col());
        if (std::abs(w) <= kDegeneracyTolerance) continue;
        rates[{static_cast<int>(it.row()), static_cast<int>(it.col())}] +=
            std::norm(it.value()) * bath_rate(noise, w);
      }
    }
  }
  for (const auto& [key, rate] : rates) {
    if (rate <= 0.0) continue;
    const double w = eig.bohr(key.first, key.second);
    report.pairs.push_back({key.first, key.second, rate, w, rate / std::abs(w)});
  }
  std::stable_sort(report.pairs.begin(), report.pairs.end(),
                   [](const RatePair& x, const RatePair& y) { return x.ratio > y.ratio; });
  report.max_ratio = report.pairs.empty() ? 0.0 : report.pairs.front().ratio;
  report.pass = report.max_ratio < threshold;
  return report;
}

}  // namespace gaugenoise
