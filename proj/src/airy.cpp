#include "macksolve/airy.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <vector>

namespace macksolve {

namespace {

// Minimal complex arithmetic in __float128.
struct Q {
  __float128 re, im;
  Q operator+(const Q& o) const { return {re + o.re, im + o.im}; }
  Q operator-(const Q& o) const { return {re - o.re, im - o.im}; }
  Q operator*(const Q& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  Q operator*(__float128 s) const { return {re * s, im * s}; }
  double mag() const { return std::abs((double)re) + std::abs((double)im); }
  cd to_cd() const { return {(double)re, (double)im}; }
};

// Constants as unevaluated double pairs, hi + lo.
const __float128 kAi0 = (__float128)0.3550280538878172 + (__float128)2.05233632436212e-17;
const __float128 kDAi0 = (__float128)0.2588194037928068 - (__float128)2.522243111610832e-17;  // -Ai'(0)
const __float128 kSqrt3 = (__float128)1.7320508075688772 + (__float128)1.0035084221806903e-16;
const double kSqrtPi = std::sqrt(kPi);

const cd kI(0.0, 1.0);

double scale_for(cd z, cd zeta) {
  return std::abs(std::arg(z)) <= kPi / 3.0 ? zeta.real() : 0.0;
}

cd zeta_of(cd w) { return (2.0 / 3.0) * w * std::sqrt(w); }

// Generalised Gauss-Laguerre rule for weight u^a e^{-u}, weights normalised to sum 1.
struct LaguerreRule {
  std::vector<double> x, w;
};

LaguerreRule laguerre_rule(double a, int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    J(k, k) = 2.0 * k + 1.0 + a;
    if (k + 1 < n) {
      double off = std::sqrt((k + 1.0) * (k + 1.0 + a));
      J(k, k + 1) = off;
      J(k + 1, k) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  LaguerreRule r;
  for (int k = 0; k < n; ++k) {
    r.x.push_back(es.eigenvalues()(k));
    double v = es.eigenvectors()(0, k);
    r.w.push_back(v * v);
  }
  return r;
}

constexpr int kLaguerreNodes = 60;

const LaguerreRule& rule_minus() {
  static const LaguerreRule r = laguerre_rule(-1.0 / 6.0, kLaguerreNodes);
  return r;
}
const LaguerreRule& rule_plus() {
  static const LaguerreRule r = laguerre_rule(1.0 / 6.0, kLaguerreNodes);
  return r;
}

// Normalised Laplace integral int_0^inf e^{-t} t^a (1 + t/(2 zeta))^a dt / Gamma(a+1),
// taken along a ray rotated by phi away from the branch point t = -2 zeta.
cd laplace_sum(const LaguerreRule& r, double a, cd zeta, double phi) {
  double c = std::cos(phi), tn = std::tan(phi);
  cd rot = std::polar(1.0 / c, phi);
  cd s = 0.0;
  for (std::size_t j = 0; j < r.x.size(); ++j) {
    double u = r.x[j];
    cd t = u * rot;
    s += r.w[j] * std::exp(cd(0.0, -u * tn)) * std::pow(1.0 + t / (2.0 * zeta), a);
  }
  return s * std::pow(rot, a + 1.0);
}

// Truncated series sum (-1)^k u_k zeta^{-k} and the derivative companion, stopped at the
// smallest term.
void truncated_sums(cd zeta, cd& su, cd& sv) {
  su = 1.0;
  sv = 1.0;
  double uk = 1.0;
  cd p = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    uk *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
    double vk = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * uk;
    p /= -zeta;
    double mag = std::abs(uk * p);
    if (mag > last || mag < 1e-18) break;
    su += uk * p;
    sv += vk * p;
    last = mag;
  }
}

// Ai(w) e^{zeta}, Ai'(w) e^{zeta} and zeta for |arg w| <= 2 pi/3 at large |w|.
struct Primitive {
  cd ai, dai, zeta;
};

Primitive primitive(cd w) {
  Primitive p;
  p.zeta = zeta_of(w);
  cd q = std::pow(w, 0.25);
  cd su, sv;
  if (std::abs(w) >= kAiryTruncated) {
    truncated_sums(p.zeta, su, sv);
  } else {
    double th = std::arg(w);
    double phi = std::abs(th) <= kPi / 3.0 ? 0.0 : (th > 0 ? 0.25 * kPi : -0.25 * kPi);
    su = laplace_sum(rule_minus(), -1.0 / 6.0, p.zeta, phi);
    sv = laplace_sum(rule_plus(), 1.0 / 6.0, p.zeta, phi);
  }
  p.ai = su / (2.0 * kSqrtPi * q);
  p.dai = -q * sv / (2.0 * kSqrtPi);
  return p;
}

// Ai and Ai' at z multiplied by exp(shift), for any z at large |z|.
void ai_shifted(cd z, double shift, cd& ai, cd& dai) {
  if (std::abs(std::arg(z)) <= 2.0 * kPi / 3.0) {
    Primitive p = primitive(z);
    cd e = std::exp(-p.zeta + shift);
    ai = p.ai * e;
    dai = p.dai * e;
    return;
  }
  // Ai(-x) = e^{i pi/3} Ai(x e^{i pi/3}) + e^{-i pi/3} Ai(x e^{-i pi/3}).
  cd x = -z;
  cd r1 = std::polar(1.0, kPi / 3.0), r2 = std::conj(r1);
  Primitive a = primitive(x * r1), b = primitive(x * r2);
  cd ea = std::exp(-a.zeta + shift), eb = std::exp(-b.zeta + shift);
  ai = r1 * a.ai * ea + r2 * b.ai * eb;
  dai = -(r1 * r1 * a.dai * ea + r2 * r2 * b.dai * eb);
}

}  // namespace

AiryValue airy_maclaurin(cd z) {
  // Quad precision absorbs the cancellation in Ai on the growth side.
  Q zz{z.real(), z.imag()};
  Q w = zz * zz * zz;
  Q f{1, 0}, fp{0, 0}, g{1, 0}, gp{1, 0};
  __float128 a = 1, b = 1;
  Q pw{1, 0};  // w^k
  for (int k = 1; k < 400; ++k) {
    Q prev = pw;
    pw = pw * w;
    a /= (__float128)(3 * k - 1) * (3 * k);
    b /= (__float128)(3 * k) * (3 * k + 1);
    Q tf = pw * a, tg = pw * b;
    Q tfp = prev * (a * (3 * k)), tgp = pw * (b * (3 * k + 1));
    f = f + tf;
    g = g + tg;
    fp = fp + tfp;
    gp = gp + tgp;
    double m = tf.mag() + tg.mag() + tfp.mag() + tgp.mag();
    double ref = f.mag() + g.mag() + fp.mag() + gp.mag();
    if (k > 3 && m < 1e-30 * ref) break;
  }
  g = g * zz;
  fp = fp * (zz * zz);
  Q ai = f * kAi0 - g * kDAi0;
  Q dai = fp * kAi0 - gp * kDAi0;
  Q bi = (f * kAi0 + g * kDAi0) * kSqrt3;
  Q dbi = (fp * kAi0 + gp * kDAi0) * kSqrt3;
  AiryValue v;
  v.log_scale = scale_for(z, zeta_of(z));
  double es = std::exp(v.log_scale), ei = std::exp(-v.log_scale);
  v.ai = ai.to_cd() * es;
  v.dai = dai.to_cd() * es;
  v.bi = bi.to_cd() * ei;
  v.dbi = dbi.to_cd() * ei;
  return v;
}

AiryValue airy_large(cd z) {
  AiryValue v;
  v.log_scale = scale_for(z, zeta_of(z));
  double L = v.log_scale;
  ai_shifted(z, L, v.ai, v.dai);
  // Bi(z) = 2 e^{-+ i pi/6} Ai(z e^{-+ 2 pi i/3}) +- i Ai(z), upper signs for Im z >= 0.
  double sg = std::arg(z) >= 0.0 ? 1.0 : -1.0;
  cd w = z * std::polar(1.0, -sg * 2.0 * kPi / 3.0);
  cd aw, daw;
  ai_shifted(w, -L, aw, daw);
  cd ai_lo, dai_lo;  // Ai(z) e^{-L}
  ai_shifted(z, -L, ai_lo, dai_lo);
  v.bi = 2.0 * std::polar(1.0, -sg * kPi / 6.0) * aw + sg * kI * ai_lo;
  v.dbi = 2.0 * std::polar(1.0, -sg * 5.0 * kPi / 6.0) * daw + sg * kI * dai_lo;
  return v;
}

AiryValue airy_pair_scaled(cd z) {
  double r = std::abs(z);
  if (!std::isfinite(r)) throw DomainError("airy: non-finite argument");
  if (r > kAiryMaxArgument) throw DomainError("airy: |z| exceeds the supported range");
  return r <= kAirySwitch ? airy_maclaurin(z) : airy_large(z);
}

AiryValue airy_pair(cd z) {
  AiryValue v = airy_pair_scaled(z);
  if (v.log_scale == 0.0 || v.log_scale > 600.0) return v;
  double es = std::exp(-v.log_scale), ei = std::exp(v.log_scale);
  v.ai *= es;
  v.dai *= es;
  v.bi *= ei;
  v.dbi *= ei;
  v.log_scale = 0.0;
  return v;
}

double airy_theta(double x) { return (2.0 / 3.0) * std::pow(x, 1.5) - 0.25 * kPi; }

}  // namespace macksolve
