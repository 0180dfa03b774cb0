#include "normgen/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace normgen {

namespace {

constexpr double kPi = std::numbers::pi;

// Distinct spectral points with multiplicities.
struct Atoms {
  std::vector<double> angle;
  std::vector<int> count;
};

Atoms atoms_of(const CircleSpectrum& u) {
  std::vector<double> a = u.angles;
  std::sort(a.begin(), a.end());
  Atoms out;
  for (double x : a) {
    if (!out.angle.empty() && out.angle.back() == x) {
      ++out.count.back();
    } else {
      out.angle.push_back(x);
      out.count.push_back(1);
    }
  }
  return out;
}

double chord(double a, double b) { return 2.0 * std::abs(std::sin(0.5 * (a - b))); }

// Descending distances from e^{i phi} to the spectrum, expanded by multiplicity.
void distances_from(const Atoms& atoms, double phi, std::vector<std::pair<double, int>>& scratch,
                    std::vector<double>& out) {
  scratch.clear();
  for (std::size_t k = 0; k < atoms.angle.size(); ++k) {
    scratch.emplace_back(chord(phi, atoms.angle[k]), atoms.count[k]);
  }
  std::sort(scratch.begin(), scratch.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  out.clear();
  for (const auto& [d, c] : scratch) out.insert(out.end(), c, d);
}

std::vector<double> candidate_phis(const Atoms& atoms) {
  std::vector<double> phis = atoms.angle;
  const std::size_t m = atoms.angle.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const double mid = 0.5 * (atoms.angle[a] + atoms.angle[b]);
      phis.push_back(mid);
      phis.push_back(mid + kPi);
    }
  }
  return phis;
}

// Prefer the witness scalar with the smallest |arg|, then the positive one.
bool better_witness(double phi_new, double phi_old) {
  const double a = canonical_angle(-phi_new);
  const double b = canonical_angle(-phi_old);
  if (std::abs(std::abs(a) - std::abs(b)) > 1e-13) return std::abs(a) < std::abs(b);
  return a > b;
}

constexpr double kValueTie = 1e-13;

void require_index(int i, int n) {
  if (i < 0 || i >= n) {
    throw Error(ErrorKind::Index, "index " + std::to_string(i) + " outside 0.." + std::to_string(n - 1));
  }
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Dimension: return "dimension error";
    case ErrorKind::Index: return "index error";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::NumericalDegeneracy: return "numerical degeneracy";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Precondition: return "precondition error";
    case ErrorKind::BudgetInfeasible: return "budget infeasible";
    case ErrorKind::DegenerateStep: return "degenerate step";
    case ErrorKind::Conjugacy: return "conjugacy error";
    case ErrorKind::Layout: return "layout error";
    case ErrorKind::Degenerate: return "degenerate input";
    case ErrorKind::ConjugacyClass: return "conjugacy class error";
    case ErrorKind::BlowUp: return "dimension blow-up";
    case ErrorKind::Parse: return "parse error";
  }
  return "error";
}

double canonical_angle(double x) {
  double r = std::remainder(x, 2.0 * kPi);  // in [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double angle_modulus(double x) { return std::abs(std::remainder(x, 2.0 * kPi)); }

cplx unit(double angle) { return std::polar(1.0, angle); }

CircleSpectrum CircleSpectrum::from_angles(std::vector<double> angles) {
  if (angles.empty()) throw Error(ErrorKind::Dimension, "empty spectrum");
  for (double& a : angles) {
    if (!std::isfinite(a)) throw Error(ErrorKind::Validation, "non-finite angle");
    a = canonical_angle(a);
  }
  return CircleSpectrum{std::move(angles)};
}

std::vector<cplx> CircleSpectrum::eigenvalues() const {
  std::vector<cplx> out;
  out.reserve(angles.size());
  for (double a : angles) out.push_back(unit(a));
  return out;
}

double unitarity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  const Matrix d = m * m.adjoint() - Matrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff();
}

UnitaryRep UnitaryRep::from_matrix(Matrix m, double tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorKind::Dimension, "matrix must be square and non-empty");
  }
  if (!m.allFinite()) throw Error(ErrorKind::Validation, "non-finite entries");
  const double defect = unitarity_defect(m);
  if (!(defect <= tol)) {
    throw Error(ErrorKind::Validation, "not unitary, |UU*-I|_max = " + std::to_string(defect));
  }
  return UnitaryRep(std::move(m));
}

UnitaryRep UnitaryRep::identity(int n) { return UnitaryRep(Matrix::Identity(n, n)); }

UnitaryRep UnitaryRep::diagonal(const CircleSpectrum& spec) { return UnitaryRep(diagonal_matrix(spec.angles)); }

UnitaryRep UnitaryRep::adjoint() const { return UnitaryRep(m_.adjoint()); }

Matrix diagonal_matrix(const std::vector<double>& angles) {
  const auto n = static_cast<Eigen::Index>(angles.size());
  Matrix d = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) d(k, k) = unit(angles[k]);
  return d;
}

double norm1(const Matrix& x) {
  double s = 0.0;
  for (double v : singular_values(x)) s += v;
  return s / static_cast<double>(x.rows());
}

double norm2(const Matrix& x) { return x.norm() / std::sqrt(static_cast<double>(x.rows())); }

ProjectiveDistance projective_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::Dimension, "projective distance between different shapes");
  }
  const cplx ip = (b.adjoint() * a).trace();
  const cplx lambda = std::abs(ip) > 0.0 ? ip / std::abs(ip) : cplx(1.0, 0.0);
  return {norm2(a - lambda * b), lambda};
}

std::vector<double> singular_values(const Matrix& x) {
  if (x.rows() != x.cols()) throw Error(ErrorKind::Dimension, "singular_values needs a square matrix");
  if (x.rows() == 0) return {};
  Eigen::JacobiSVD<Matrix> svd(x);
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double mu(const Matrix& x, int i) {
  if (x.rows() != x.cols()) throw Error(ErrorKind::Dimension, "mu needs a square matrix");
  require_index(i, static_cast<int>(x.rows()));
  return singular_values(x)[static_cast<std::size_t>(i)];
}

SProfile mu_profile(const Matrix& x) {
  SProfile p;
  p.kind = SProfile::Kind::Mu;
  p.values = singular_values(x);
  return p;
}

SProfile ell_profile(const CircleSpectrum& u) {
  const int n = u.size();
  const Atoms atoms = atoms_of(u);
  SProfile p;
  p.kind = SProfile::Kind::Ell;
  p.values.assign(static_cast<std::size_t>(n), INFINITY);
  std::vector<double> best_phi(static_cast<std::size_t>(n), 0.0);
  std::vector<std::pair<double, int>> scratch;
  std::vector<double> dist;
  for (double phi : candidate_phis(atoms)) {
    distances_from(atoms, phi, scratch, dist);
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const double d = dist[k];
      if (d < p.values[k] - kValueTie ||
          (std::abs(d - p.values[k]) <= kValueTie && better_witness(phi, best_phi[k]))) {
        p.values[k] = std::min(d, p.values[k]);
        best_phi[k] = phi;
      }
    }
  }
  p.phases.reserve(static_cast<std::size_t>(n));
  for (double phi : best_phi) p.phases.push_back(unit(canonical_angle(-phi)));
  return p;
}

EllValue ell(const CircleSpectrum& u, int i) {
  require_index(i, u.size());
  const SProfile p = ell_profile(u);
  const auto k = static_cast<std::size_t>(i);
  return {p.values[k], p.phases[k]};
}

EllValue ell(const UnitaryRep& u, int i) { return ell(diagonalize_normal(u).spectrum, i); }

SProfile ell_profile(const UnitaryRep& u) { return ell_profile(diagonalize_normal(u).spectrum); }

EllValue ell_by_grid(const CircleSpectrum& u, int i) {
  require_index(i, u.size());
  const Atoms atoms = atoms_of(u);
  std::vector<std::pair<double, int>> scratch;
  std::vector<double> dist;
  const auto k = static_cast<std::size_t>(i);
  auto f = [&](double phi) {
    distances_from(atoms, phi, scratch, dist);
    return dist[k];
  };

  const double h = 2.0 * kPi / kGridN;
  std::vector<double> grid(kGridN);
  double best = INFINITY;
  double best_phi = 0.0;
  for (int g = 0; g < kGridN; ++g) {
    grid[static_cast<std::size_t>(g)] = f(-kPi + h * g);
    if (grid[static_cast<std::size_t>(g)] < best) {
      best = grid[static_cast<std::size_t>(g)];
      best_phi = -kPi + h * g;
    }
  }
  // Any cell holding the global minimum has a grid value within h of the best one.
  const double cutoff = best + h;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int g = 0; g < kGridN; ++g) {
    if (grid[static_cast<std::size_t>(g)] > cutoff) continue;
    // Subdivide the bracket before golden-section so nearby kinks are separated.
    double lo = -kPi + h * (g - 1);
    constexpr int kSub = 16;
    const double sh = 2.0 * h / kSub;
    double sub_best = INFINITY;
    int sub_arg = 0;
    for (int s = 0; s <= kSub; ++s) {
      const double v = f(lo + sh * s);
      if (v < sub_best) {
        sub_best = v;
        sub_arg = s;
      }
    }
    double a = lo + sh * (sub_arg - 1);
    double b = lo + sh * (sub_arg + 1);
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 80 && b - a > 1e-14; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = f(d);
      }
    }
    for (double x : {a, b, c, d, lo + sh * sub_arg}) {
      const double v = f(x);
      if (v < best) {
        best = v;
        best_phi = x;
      }
    }
  }
  return {best, unit(canonical_angle(-best_phi))};
}

double ell_one_norm(const CircleSpectrum& u) {
  // The mean chord distance is concave between spectral points, so its minimum
  // over the circle is attained at one of them.
  const Atoms atoms = atoms_of(u);
  const double n = static_cast<double>(u.size());
  double best = INFINITY;
  for (double phi : atoms.angle) {
    double s = 0.0;
    for (std::size_t k = 0; k < atoms.angle.size(); ++k) s += atoms.count[k] * chord(phi, atoms.angle[k]);
    best = std::min(best, s / n);
  }
  return best;
}

double ell_one_norm(const UnitaryRep& u) { return ell_one_norm(diagonalize_normal(u).spectrum); }

double big_L(const CircleSpectrum& u) {
  const SProfile p = ell_profile(u);
  double s = 0.0;
  for (double v : p.values) s += v;
  return s / static_cast<double>(p.values.size());
}

double big_L(const UnitaryRep& u) { return big_L(diagonalize_normal(u).spectrum); }

int projective_rank(const CircleSpectrum& u) {
  const SProfile p = ell_profile(u);
  const int n = static_cast<int>(p.values.size());
  if (p.values.back() > kTol.rank) {
    throw Error(ErrorKind::NumericalDegeneracy, "last projective s-number does not vanish");
  }
  int s = n;
  while (s > 0 && p.values[static_cast<std::size_t>(s - 1)] <= kTol.rank) --s;
  return s;
}

int projective_rank(const UnitaryRep& u) { return projective_rank(diagonalize_normal(u).spectrum); }

RankDistance rank_distance(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols()) {
    throw Error(ErrorKind::Dimension, "rank_distance needs square matrices of equal size");
  }
  RankDistance r;
  r.n = static_cast<int>(x.rows());
  for (double s : singular_values(x - y)) {
    if (s > kTol.rank) ++r.rank;
  }
  return r;
}

Diagonalization diagonalize_normal(const UnitaryRep& u, std::uint64_t seed) {
  const Matrix& x = u.matrix();
  const Eigen::Index n = x.rows();
  const Matrix re = 0.5 * (x + x.adjoint());
  const Matrix im = (x - x.adjoint()) / cplx(0.0, 2.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 2.0 * kPi);
  double last = INFINITY;
  for (int attempt = 0; attempt <= kDiagRetries; ++attempt) {
    const double t = dist(rng);
    const Matrix h = std::cos(t) * re + std::sin(t) * im;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) continue;
    Matrix w = es.eigenvectors();
    const Matrix d = w.adjoint() * x * w;
    std::vector<double> angles(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) angles[static_cast<std::size_t>(k)] = canonical_angle(std::arg(d(k, k)));
    const Matrix rebuilt = w * diagonal_matrix(angles) * w.adjoint();
    last = (rebuilt - x).cwiseAbs().maxCoeff();
    if (last <= kTol.diag_residual) return {CircleSpectrum{std::move(angles)}, std::move(w), last};
  }
  throw Error(ErrorKind::NumericalDegeneracy, "diagonalization residual " + std::to_string(last));
}

}  // namespace normgen
