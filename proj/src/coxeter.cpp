#include "limroots/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "limroots/error.hpp"

namespace limroots {

CoxeterGraph::CoxeterGraph(int rank) : rank_(rank) {
  if (rank < 1) throw Error(ErrorKind::InvalidInput, "rank must be at least 1");
  const auto n = static_cast<std::size_t>(rank);
  labels_.assign(n * n, 2);
  cparams_.assign(n * n, std::nullopt);
  for (std::size_t s = 0; s < n; ++s) labels_[s * n + s] = 1;
}

std::size_t CoxeterGraph::slot(Generator s, Generator t) const {
  return static_cast<std::size_t>(s) * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(t);
}

void CoxeterGraph::check_pair(Generator s, Generator t) const {
  if (s < 0 || t < 0 || s >= rank_ || t >= rank_) {
    std::ostringstream msg;
    msg << "edge (" << s << ", " << t << ") out of range for rank " << rank_;
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
  if (s == t) {
    std::ostringstream msg;
    msg << "loop edge (" << s << ", " << t << ")";
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
}

void CoxeterGraph::set_label(Generator s, Generator t, int m) {
  check_pair(s, t);
  if (m < 2) {
    std::ostringstream msg;
    msg << "label m = " << m << " on edge (" << s << ", " << t << ") must be at least 2";
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
  labels_[slot(s, t)] = labels_[slot(t, s)] = m;
  cparams_[slot(s, t)] = cparams_[slot(t, s)] = std::nullopt;
}

void CoxeterGraph::set_infinite(Generator s, Generator t, std::optional<double> c) {
  check_pair(s, t);
  if (c && !(*c >= 1.0)) {
    std::ostringstream msg;
    msg << "c = " << *c << " on edge (" << s << ", " << t << ") must be at least 1";
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
  labels_[slot(s, t)] = labels_[slot(t, s)] = kInfinity;
  cparams_[slot(s, t)] = cparams_[slot(t, s)] = c;
}

int CoxeterGraph::label(Generator s, Generator t) const { return labels_[slot(s, t)]; }

std::optional<double> CoxeterGraph::cparam(Generator s, Generator t) const { return cparams_[slot(s, t)]; }

Matrix build_form(const CoxeterGraph& graph) {
  const int n = graph.rank();
  Matrix b = Matrix::Identity(n, n);
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      double v = 0.0;
      if (graph.is_infinite(s, t)) {
        auto c = graph.cparam(s, t);
        if (!c) {
          std::ostringstream msg;
          msg << "infinite edge (" << s << ", " << t << ") has no c-parameter";
          throw Error(ErrorKind::InvalidInput, msg.str());
        }
        v = -*c;
      } else {
        const int m = graph.label(s, t);
        // cos(pi/2) is 6e-17 in floating point; keep commuting pairs exactly orthogonal.
        v = m == 2 ? 0.0 : -std::cos(std::numbers::pi / m);
      }
      b(s, t) = b(t, s) = v;
    }
  }
  return b;
}

Signature signature(const Matrix& form, double rel_tol) {
  if (form.rows() != form.cols() || form.rows() == 0) {
    throw Error(ErrorKind::InvalidInput, "signature needs a non-empty square matrix");
  }
  if (!form.isApprox(form.transpose(), 1e-12)) throw Error(ErrorKind::InvalidInput, "form is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(form, Eigen::EigenvaluesOnly);
  const Vector ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  auto count = [&](double tol) {
    Signature sig;
    for (double v : ev) {
      if (v > tol) {
        ++sig.n_plus;
      } else if (v < -tol) {
        ++sig.n_minus;
      } else {
        ++sig.n_zero;
      }
    }
    return sig;
  };
  const Signature sig = count(rel_tol * scale);
  const Signature narrow = count(rel_tol * scale / 10.0);
  if (sig.n_zero != narrow.n_zero) {
    std::ostringstream msg;
    msg << "an eigenvalue sits at the edge of the zero band (" << rel_tol * scale << ")";
    throw Error(ErrorKind::BorderlineSignature, msg.str());
  }
  return sig;
}

Matrix generator_matrix(const GeometricSystem& sys, Generator s) {
  if (s < 0 || s >= sys.rank()) throw Error(ErrorKind::InvalidInput, "generator index out of range");
  return sys.generator(s);
}

Matrix reflection_matrix(const Matrix& form, const Vector& root) {
  const Vector b_root = form * root;
  const double q = root.dot(b_root);
  if (std::abs(q) < 1e-14) throw Error(ErrorKind::InvalidInput, "cannot reflect in an isotropic vector");
  return Matrix::Identity(root.size(), root.size()) - (2.0 / q) * root * b_root.transpose();
}

namespace {

Matrix simple_reflection(const Matrix& form, Generator s) {
  const auto n = form.rows();
  Matrix m = Matrix::Identity(n, n);
  for (Eigen::Index t = 0; t < n; ++t) m(s, t) -= 2.0 * form(t, s);
  return m;
}

}  // namespace

GeometricSystem::GeometricSystem(CoxeterGraph graph)
    : graph_(std::move(graph)), form_(build_form(graph_)), signature_(limroots::signature(form_)) {
  gens_.reserve(static_cast<std::size_t>(rank()));
  for (Generator s = 0; s < rank(); ++s) gens_.push_back(simple_reflection(form_, s));
  if (nonsingular()) form_inverse_ = form_.fullPivLu().inverse();
}

std::string GeometricSystem::type_name() const {
  std::ostringstream os;
  if (signature_.positive_definite()) return "finite";
  if (signature_.positive_semidefinite()) return "affine";
  if (signature_.lorentzian()) {
    os << "Lorentzian (" << signature_.n_plus << "," << signature_.n_minus << ")";
    return os.str();
  }
  os << "other (" << signature_.n_plus << "," << signature_.n_minus;
  if (signature_.n_zero > 0) os << "," << signature_.n_zero;
  os << ")";
  return os.str();
}

Matrix word_matrix(const GeometricSystem& sys, std::span<const Generator> word) {
  Matrix m = Matrix::Identity(sys.rank(), sys.rank());
  for (Generator s : word) {
    if (s < 0 || s >= sys.rank()) throw Error(ErrorKind::InvalidInput, "generator index out of range");
    m = m * sys.generator(s);
  }
  return m;
}

bool is_positive_root(const Vector& v, double rel_tol) {
  const double scale = v.cwiseAbs().maxCoeff();
  return scale > 0.0 && v.minCoeff() >= -rel_tol * scale;
}

bool is_negative_root(const Vector& v, double rel_tol) { return is_positive_root(-v, rel_tol); }

GroupElement element_of(const GeometricSystem& sys, std::span<const Generator> word) {
  GroupElement e;
  e.matrix = word_matrix(sys, word);
  std::vector<Generator> reversed(word.rbegin(), word.rend());
  Matrix rest = e.matrix;
  Matrix rest_inv = word_matrix(sys, reversed);
  // Every strip shortens the element by one, so the loop ends within |word| steps.
  for (std::size_t step = 0; step <= word.size(); ++step) {
    Generator descent = -1;
    for (Generator s = 0; s < sys.rank(); ++s) {
      // Columns of w^-1 are roots; their height carries the sign.
      if (rest_inv.col(s).sum() < 0.0) {
        descent = s;
        break;
      }
    }
    if (descent < 0) break;
    e.word.push_back(descent);
    rest = sys.generator(descent) * rest;
    rest_inv = rest_inv * sys.generator(descent);
  }
  e.length = static_cast<int>(e.word.size());
  return e;
}

ElementStore::ElementStore(int rank, const EnumerateOptions& opts)
    : index_(static_cast<std::size_t>(rank) * static_cast<std::size_t>(rank), opts.grid, opts.verify_tol) {}

std::size_t ElementStore::count_at_length(int k) const {
  if (k < 0 || k > max_length()) return 0;
  return layer_begin_[static_cast<std::size_t>(k) + 1] - layer_begin_[static_cast<std::size_t>(k)];
}

std::pair<std::size_t, std::size_t> ElementStore::range(int lo, int hi) const {
  lo = std::max(lo, 0);
  hi = std::min(hi, max_length());
  if (hi < lo) return {0, 0};
  return {layer_begin_[static_cast<std::size_t>(lo)], layer_begin_[static_cast<std::size_t>(hi) + 1]};
}

std::optional<std::size_t> ElementStore::find(const Matrix& m) const {
  if (m.size() != static_cast<Eigen::Index>(index_.dim())) return std::nullopt;
  return index_.find(std::span<const double>(m.data(), static_cast<std::size_t>(m.size())));
}

ElementStore enumerate(const GeometricSystem& sys, int max_length, const EnumerateOptions& opts) {
  if (max_length < 0) throw Error(ErrorKind::InvalidInput, "max_length must be non-negative");
  const int n = sys.rank();
  ElementStore store(n, opts);
  auto add = [&](GroupElement e) {
    store.index_.insert(std::span<const double>(e.matrix.data(), static_cast<std::size_t>(e.matrix.size())));
    store.elements_.push_back(std::move(e));
  };
  add(GroupElement{{}, Matrix::Identity(n, n), 0});
  store.layer_begin_ = {0, 1};

  for (int len = 1; len <= max_length; ++len) {
    const std::size_t first = store.layer_begin_[static_cast<std::size_t>(len) - 1];
    const std::size_t last = store.layer_begin_[static_cast<std::size_t>(len)];
    for (std::size_t id = first; id < last; ++id) {
      for (Generator s = 0; s < n; ++s) {
        // l(ws) > l(w) exactly when w(alpha_s) is a positive root.
        if (store.elements_[id].matrix.col(s).sum() < 0.0) continue;
        Matrix next = store.elements_[id].matrix * sys.generator(s);
        if (next.cwiseAbs().maxCoeff() > opts.max_entry) {
          std::ostringstream msg;
          msg << "matrix entries exceed " << opts.max_entry << " at length " << len
              << "; the fingerprint grid is no longer meaningful";
          throw Error(ErrorKind::BudgetExceeded, msg.str());
        }
        if (store.find(next)) continue;
        if (store.size() >= opts.max_elements) {
          std::ostringstream msg;
          msg << "more than " << opts.max_elements << " elements up to length " << len;
          throw Error(ErrorKind::BudgetExceeded, msg.str());
        }
        Word w = store.elements_[id].word;
        w.push_back(s);
        add(GroupElement{std::move(w), std::move(next), len});
      }
    }
    store.layer_begin_.push_back(store.size());
  }
  return store;
}

}  // namespace limroots
