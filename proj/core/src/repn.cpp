#include "vext/repn.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace vext {

Rat rat_from_string(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& x) { return x.get_str(); }

}  // namespace vext

namespace vext::repn {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw std::invalid_argument("partition parts must be non-increasing");
  }
  n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::string Partition::str() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

namespace {

void enumerate(int remaining, int max_part, int rows_left, std::vector<int>& cur,
               std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  if (rows_left == 0) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    enumerate(remaining - p, p, rows_left - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions(int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("partitions: need n >= 1, d >= 1");
  std::vector<Partition> out;
  std::vector<int> cur;
  enumerate(n, n, d, cur, out);
  return out;
}

std::vector<Partition> grow(const Partition& alpha, int d) {
  std::vector<Partition> out;
  for (int r = 0; r <= alpha.rows(); ++r) {
    if (r >= d) break;
    // box addable at row r iff it keeps rows non-increasing
    if (r > 0 && alpha.part(r) + 1 > alpha.part(r - 1)) continue;
    std::vector<int> parts = alpha.parts();
    if (r == alpha.rows())
      parts.push_back(1);
    else
      parts[r] += 1;
    out.emplace_back(std::move(parts));
  }
  return out;
}

long long syt_count(const Partition& lambda) {
  // n! / prod(hooks)
  mpz_class num;
  mpz_fac_ui(num.get_mpz_t(), lambda.n());
  mpz_class den = 1;
  const auto& p = lambda.parts();
  for (int i = 0; i < lambda.rows(); ++i) {
    for (int j = 0; j < p[i]; ++j) {
      int arm = p[i] - j - 1;
      int leg = 0;
      for (int r = i + 1; r < lambda.rows(); ++r)
        if (p[r] > j) ++leg;
      den *= arm + leg + 1;
    }
  }
  mpz_class res = num / den;
  return res.get_si();
}

long long ssyt_count(const Partition& lambda, int d) {
  if (lambda.rows() > d) return 0;
  Rat prod = 1;
  const auto& p = lambda.parts();
  for (int i = 0; i < lambda.rows(); ++i) {
    for (int j = 0; j < p[i]; ++j) {
      int content = j - i;
      int arm = p[i] - j - 1;
      int leg = 0;
      for (int r = i + 1; r < lambda.rows(); ++r)
        if (p[r] > j) ++leg;
      prod *= frac(d + content, arm + leg + 1);
    }
  }
  mpz_class res = prod.get_num() / prod.get_den();
  return res.get_si();
}

namespace {

// Murnaghan-Nakayama via beta numbers: removing a border strip of size s
// corresponds to replacing some beta_i by beta_i - s when the result is a
// fresh nonnegative value; the sign is (-1)^{#beta strictly in between}.
long long mn_char(const std::vector<int>& lambda, const std::vector<int>& type) {
  if (lambda.empty()) return 1;
  int s = type.front();
  std::vector<int> rest(type.begin() + 1, type.end());
  int m = static_cast<int>(lambda.size());
  std::vector<int> beta(m);
  for (int i = 0; i < m; ++i) beta[i] = lambda[i] + (m - 1 - i);
  long long total = 0;
  for (int i = 0; i < m; ++i) {
    int t = beta[i] - s;
    if (t < 0) continue;
    bool clash = false;
    int between = 0;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      if (beta[j] == t) clash = true;
      if (beta[j] > t && beta[j] < beta[i]) ++between;
    }
    if (clash) continue;
    std::vector<int> nb(beta);
    nb[i] = t;
    std::sort(nb.rbegin(), nb.rend());
    std::vector<int> mu(m);
    for (int r = 0; r < m; ++r) mu[r] = nb[r] - (m - 1 - r);
    while (!mu.empty() && mu.back() == 0) mu.pop_back();
    long long sub = mn_char(mu, rest);
    total += (between % 2 ? -sub : sub);
  }
  return total;
}

std::map<std::pair<std::vector<int>, std::vector<int>>, long long> g_char_memo;
std::mutex g_char_mutex;

}  // namespace

long long character(const Partition& lambda, const Partition& cycle_type) {
  if (lambda.n() != cycle_type.n())
    throw std::invalid_argument("character: partition sizes differ");
  auto key = std::make_pair(lambda.parts(), cycle_type.parts());
  {
    std::lock_guard<std::mutex> lock(g_char_mutex);
    auto it = g_char_memo.find(key);
    if (it != g_char_memo.end()) return it->second;
  }
  long long v = mn_char(lambda.parts(), cycle_type.parts());
  std::lock_guard<std::mutex> lock(g_char_mutex);
  g_char_memo[key] = v;
  return v;
}

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (int v : img_) {
    if (v < 0 || v >= size() || seen[v]) throw std::invalid_argument("not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  for (const auto& c : cycles)
    for (size_t i = 0; i < c.size(); ++i) img[c[i]] = c[(i + 1) % c.size()];
  return Permutation(std::move(img));
}

Permutation Permutation::compose(const Permutation& o) const {
  std::vector<int> img(size());
  for (int i = 0; i < size(); ++i) img[i] = img_[o(i)];
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(size());
  for (int i = 0; i < size(); ++i) img[img_[i]] = i;
  return Permutation(std::move(img));
}

Partition Permutation::cycle_type() const {
  std::vector<bool> seen(size(), false);
  std::vector<int> lens;
  for (int i = 0; i < size(); ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = img_[j];
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return Partition(std::move(lens));
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

CycleStats cycle_stats(const Permutation& tau) {
  auto type = tau.cycle_type();
  int L = 0, j = 0;
  do {
    j = tau(j);
    ++L;
  } while (j != 0);
  return {type.rows(), L};
}

StirlingSums stirling_sums(int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("stirling_sums: need n,d >= 1");
  Rat K = d;
  for (int i = 1; i < n; ++i) K *= d + i;
  Rat Q = 0;
  if (n >= 2) {
    Q = d;
    for (int i = 3; i <= n; ++i) Q *= d + i - 1;
  }
  Rat W = K + (n - 1) * Q;
  return {K, Q, W};
}

}  // namespace vext::repn
