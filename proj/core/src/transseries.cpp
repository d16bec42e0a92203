#include "p1/transseries.hpp"

#include <utility>

#include "p1/error.hpp"

namespace p1 {

PowerSeries1x compute_h0_series(int M, const Rational& quartic) {
  if (M < 4) throw DomainError("compute_h0_series needs M >= 4");
  // Order x^{-n}:  (n-2)^2 c_{n-2} - c_n - (1/2) sum c_i c_{n-i} + q [n == 4] = 0.
  // Only c_i with i >= 4 are nonzero, so the quadratic term never involves c_n.
  std::vector<Rational> c(static_cast<std::size_t>(M) + 1, Rational(0));
  for (int n = 4; n <= M; ++n) {
    Rational v = Rational((n - 2) * (n - 2)) * c[n - 2];
    Rational quad = 0;
    for (int i = 4; i + 4 <= n; ++i) quad += c[i] * c[n - i];
    v -= quad / 2;
    if (n == 4) v += quartic;
    v.canonicalize();
    c[n] = v;
  }
  return PowerSeries1x(std::move(c));
}

TransseriesTable::TransseriesTable(int K, int M, std::vector<std::vector<Rational>> entries)
    : K_(K), M_(M), entries_(std::move(entries)) {
  if (K_ < 0 || M_ < 0 || static_cast<int>(entries_.size()) != K_ + 1) {
    throw DomainError("transseries table shape mismatch");
  }
  for (const auto& r : entries_) {
    if (static_cast<int>(r.size()) != M_ + 1) throw DomainError("transseries table shape mismatch");
  }
}

const Rational& TransseriesTable::entry(int k, int m) const {
  return entries_.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(m));
}

const std::vector<Rational>& TransseriesTable::row(int k) const {
  return entries_.at(static_cast<std::size_t>(k));
}

const std::vector<std::vector<Real>>& TransseriesTable::real_entries() const {
  if (real_.empty() && !entries_.empty()) {
    real_.resize(entries_.size());
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      real_[k].reserve(entries_[k].size());
      for (const auto& q : entries_[k]) real_[k].push_back(to_real(q));
    }
  }
  return real_;
}

TransseriesTable compute_transseries_table(int K, int M, const Rational& quartic) {
  if (K < 1 || M < 0) throw DomainError("compute_transseries_table needs K >= 1, M >= 0");
  const PowerSeries1x h0 = compute_h0_series(std::max(M + 1, 4), quartic);
  std::vector<std::vector<Rational>> c(static_cast<std::size_t>(K) + 1,
                                       std::vector<Rational>(static_cast<std::size_t>(M) + 1, Rational(0)));
  for (int m = 0; m <= M; ++m) c[0][m] = h0.coeff(m);

  // Level 1 is resonant: the order-n equation fixes c_{1,n-1}.
  //   2m c_{1m} = -(m - 1/2)^2 c_{1,m-1} + sum_{i>=4} c_{0i} c_{1,m+1-i}
  c[1][0] = 1;
  for (int m = 1; m <= M; ++m) {
    Rational v = -Rational((2 * m - 1) * (2 * m - 1), 4) * c[1][m - 1];
    for (int i = 4; i <= m + 1; ++i) v += h0.coeff(i) * c[1][m + 1 - i];
    v /= 2 * m;
    v.canonicalize();
    c[1][m] = v;
  }

  // Level k >= 2, order n:
  //   (k^2-1) c_{kn} = -k(k+2n-3) c_{k,n-1} - (k/2+n-2)^2 c_{k,n-2}
  //                    + sum_{i>=4} c_{0i} c_{k,n-i} + 1/2 sum_{j=1}^{k-1} sum_{p+q=n} c_{jp} c_{k-j,q}
  for (int k = 2; k <= K; ++k) {
    const Rational lin(k * k - 1);
    if (sgn(lin) == 0) throw ResonanceError("vanishing linear coefficient at level " + std::to_string(k));
    for (int n = 0; n <= M; ++n) {
      Rational v = 0;
      if (n >= 1) v -= Rational(k * (k + 2 * n - 3)) * c[k][n - 1];
      if (n >= 2) {
        const Rational a(k + 2 * n - 4, 2);
        v -= a * a * c[k][n - 2];
      }
      for (int i = 4; i <= n; ++i) v += h0.coeff(i) * c[k][n - i];
      Rational bil = 0;
      for (int j = 1; 2 * j <= k; ++j) {
        Rational part = 0;
        for (int p = 0; p <= n; ++p) part += c[j][p] * c[k - j][n - p];
        bil += (2 * j == k) ? part : Rational(2) * part;
      }
      v += bil / 2;
      v /= lin;
      v.canonicalize();
      c[k][n] = v;
    }
  }
  return TransseriesTable(K, M, std::move(c));
}

nlohmann::json rationals_to_json(const std::vector<Rational>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : v) out.push_back(rational_to_string(q));
  return out;
}

std::vector<Rational> rationals_from_json(const nlohmann::json& j) {
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(parse_rational(e.get<std::string>()));
  return out;
}

nlohmann::json TransseriesTable::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : entries_) rows.push_back(rationals_to_json(r));
  return {{"kind", "transseries_table"}, {"K", K_}, {"M", M_}, {"entries", rows}};
}

TransseriesTable TransseriesTable::from_json(const nlohmann::json& j) {
  if (j.value("kind", "") != "transseries_table") throw DomainError("not a transseries_table document");
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j.at("entries")) rows.push_back(rationals_from_json(r));
  return TransseriesTable(j.at("K").get<int>(), j.at("M").get<int>(), std::move(rows));
}

}  // namespace p1
