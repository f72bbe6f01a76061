#include "cfa/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfa::reference {

std::vector<std::size_t> naive_ranks(const std::vector<double>& scores) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> ranks(n);
  for (std::size_t d = 0; d < n; ++d) {
    std::size_t ahead = 0;
    for (std::size_t e = 0; e < n; ++e) {
      if (scores[e] > scores[d] || (scores[e] == scores[d] && e < d)) ++ahead;
    }
    ranks[d] = ahead + 1;
  }
  return ranks;
}

std::vector<double> naive_rsc(const std::vector<double>& scores) {
  const auto ranks = naive_ranks(scores);
  std::vector<double> f(scores.size());
  for (std::size_t i = 1; i <= scores.size(); ++i) {
    for (std::size_t d = 0; d < scores.size(); ++d) {
      if (ranks[d] == i) f[i - 1] = scores[d];
    }
  }
  return f;
}

double naive_cd(const std::vector<double>& f_a, const std::vector<double>& f_b) {
  const std::size_t n = f_a.size();
  if (n != f_b.size() || n < 3) throw std::invalid_argument("naive_cd: bad lengths");
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += (f_a[i] - f_b[i]) * (f_a[i] - f_b[i]);
  return std::sqrt(sum / static_cast<double>(n - 2));
}

std::vector<std::vector<double>> naive_cd_matrix(const std::vector<std::vector<double>>& scores) {
  const std::size_t t = scores.size();
  std::vector<std::vector<double>> f;
  for (const auto& s : scores) f.push_back(naive_rsc(s));
  std::vector<std::vector<double>> cd(t, std::vector<double>(t, 0.0));
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      if (i != j) cd[i][j] = naive_cd(f[i], f[j]);
    }
  }
  return cd;
}

namespace {

std::size_t matches(const std::vector<int>& predicted, const std::vector<int>& labels) {
  std::size_t m = 0;
  for (std::size_t d = 0; d < labels.size(); ++d) m += predicted[d] == labels[d] ? 1 : 0;
  return m;
}

// Instance d is positive when fewer than p instances come strictly before it.
// Values within a relative 1e-9 count as tied and fall back to index order.
std::vector<int> top_p(const std::vector<double>& fused, std::size_t p) {
  const std::size_t n = fused.size();
  std::vector<int> out(n, 0);
  for (std::size_t d = 0; d < n; ++d) {
    std::size_t before = 0;
    for (std::size_t e = 0; e < n; ++e) {
      if (e == d) continue;
      const double tol = 1e-9 * std::max(std::fabs(fused[d]), 1.0);
      const bool tied = std::fabs(fused[e] - fused[d]) <= tol;
      if ((!tied && fused[e] < fused[d]) || (tied && e < d)) ++before;
    }
    out[d] = before < p ? 1 : 0;
  }
  return out;
}

}  // namespace

std::vector<Row> naive_evaluate(const std::vector<std::string>& ids,
                                const std::vector<std::vector<double>>& scores,
                                const std::vector<int>& labels, double threshold,
                                bool inverse_rank_weights) {
  const std::size_t t = scores.size();
  const std::size_t n = labels.size();
  std::size_t p = 0;
  for (int y : labels) p += y == 1 ? 1 : 0;

  std::vector<std::vector<std::size_t>> r;
  for (const auto& s : scores) r.push_back(naive_ranks(s));
  const auto cd = naive_cd_matrix(scores);

  bool short_ids = true;
  for (const auto& id : ids) short_ids = short_ids && id.size() == 1;

  std::vector<Row> rows;
  for (std::size_t j = 0; j < t; ++j) {
    std::vector<int> pred(n);
    for (std::size_t d = 0; d < n; ++d) pred[d] = scores[j][d] >= threshold ? 1 : 0;
    const std::size_t m = matches(pred, labels);
    rows.push_back({ids[j], "single", "none", m, static_cast<double>(m) / static_cast<double>(n)});
  }

  for (unsigned mask = 1; mask < (1u << t); ++mask) {
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < t; ++j) {
      if (mask & (1u << j)) members.push_back(j);
    }
    if (members.size() < 2) continue;
    const std::size_t k = members.size();

    std::string name;
    for (std::size_t j : members) {
      if (!short_ids && !name.empty()) name += "+";
      name += ids[j];
    }

    std::vector<double> ds(k);
    for (std::size_t a = 0; a < k; ++a) {
      double sum = 0.0;
      for (std::size_t b = 0; b < k; ++b) {
        if (a != b) sum += cd[members[a]][members[b]];
      }
      ds[a] = sum / static_cast<double>(k - 1);
    }
    bool degenerate = false;
    for (double v : ds) degenerate = degenerate || v <= 0.0;

    for (const std::string weighting : {"AC", "WCDS"}) {
      std::vector<double> w(k, 1.0);
      if (weighting == "WCDS" && !degenerate) w = ds;

      // Score combination.
      std::vector<int> pred(n);
      for (std::size_t d = 0; d < n; ++d) {
        double num = 0.0, den = 0.0;
        for (std::size_t a = 0; a < k; ++a) {
          num += w[a] * scores[members[a]][d];
          den += w[a];
        }
        pred[d] = num / den >= threshold ? 1 : 0;
      }
      std::size_t m = matches(pred, labels);
      rows.push_back({name, "score", weighting, m, static_cast<double>(m) / static_cast<double>(n)});

      // Rank combination.
      std::vector<double> fused(n);
      for (std::size_t d = 0; d < n; ++d) {
        double num = 0.0, den = 0.0;
        for (std::size_t a = 0; a < k; ++a) {
          const double c = inverse_rank_weights ? 1.0 / w[a] : w[a];
          num += c * static_cast<double>(r[members[a]][d]);
          den += c;
        }
        fused[d] = num / den;
      }
      pred = top_p(fused, p);
      m = matches(pred, labels);
      rows.push_back({name, "rank", weighting, m, static_cast<double>(m) / static_cast<double>(n)});
    }
  }
  return rows;
}

}  // namespace cfa::reference
