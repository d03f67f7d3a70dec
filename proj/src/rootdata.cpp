#include "qmanin/rootdata.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace qmanin {

namespace {

// Exact inverse of a small integer matrix.
std::vector<std::vector<Rat>> inverse(const std::vector<std::vector<int>>& a) {
  int n = static_cast<int>(a.size());
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (m[p][c] == 0) ++p;
    std::swap(m[p], m[c]);
    Rat inv = 1 / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rat f = m[r][c];
      for (int j = 0; j < 2 * n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  std::vector<std::vector<Rat>> out(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = m[i][n + j];
  return out;
}

}  // namespace

RootDatum RootDatum::make(const std::string& label, std::optional<std::vector<int>> word) {
  RootDatum rd;
  rd.label = label;
  std::vector<int> pinned;
  if (label == "A1") {
    rd.rank = 1;
    pinned = {1};
  } else if (label == "A2") {
    rd.rank = 2;
    pinned = {1, 2, 1};
  } else if (label == "A3") {
    rd.rank = 3;
    pinned = {1, 2, 1, 3, 2, 1};
  } else if (label == "B2") {
    throw ConfigError("type", "type B2 is not supported by this build (supported: A1, A2, A3)");
  } else {
    throw ConfigError("type", "unknown type label '" + label + "'");
  }
  int n = rd.rank;
  rd.cartan.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    rd.cartan[i][i] = 2;
    if (i + 1 < n) rd.cartan[i][i + 1] = rd.cartan[i + 1][i] = -1;
  }
  rd.dsym.assign(n, 1);
  rd.lattice_index = n + 1;
  // (w_j, w_k) = (D A^-1)_{jk}
  auto ainv = inverse(rd.cartan);
  rd.cartan_inv = ainv;
  rd.form.assign(n, std::vector<Rat>(n));
  rd.form_d.assign(n, std::vector<int>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      rd.form[j][k] = rd.dsym[j] * ainv[j][k];
      Rat x = rd.form[j][k] * rd.lattice_index;
      x.canonicalize();
      rd.form_d[j][k] = static_cast<int>(x.get_num().get_si());
    }
  std::vector<int> w = word ? *word : pinned;
  rd.w0.clear();
  for (int x : w) {
    if (x < 1 || x > n) throw ValidationError("w0 letter out of range");
    rd.w0.push_back(x - 1);
  }
  auto roots = enumerate_positive_roots(rd);
  if (rd.w0.size() != roots.size())
    throw ValidationError("w0 word has length " + std::to_string(rd.w0.size()) + ", expected " +
                          std::to_string(roots.size()));
  std::set<Weight> seen;
  for (size_t k = 0; k < rd.w0.size(); ++k) {
    Weight b = rd.alpha(rd.w0[k]);
    for (size_t j = k; j-- > 0;) b = rd.reflect(rd.w0[j], b);
    auto c = rd.to_root_coords(b);
    bool pos = std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
    if (!pos || seen.count(b)) throw ValidationError("w0 word is not reduced");
    seen.insert(b);
    rd.beta.push_back(b);
    rd.beta_q.push_back(c);
    Rat bb = rd.bilinear(b, b) / 2;
    rd.beta_d.push_back(static_cast<int>(bb.get_num().get_si()));
  }
  if (static_cast<int>(rd.beta.size()) > kMaxRoots) throw ValidationError("too many positive roots");
  // Lambda_0 = {r + sum eps_i alpha_i : r in {0, w_1..w_n}, eps in {0,1}^n}; the w_k
  // represent Lambda/Q in type A, so this is a set of representatives of Lambda/2Q.
  // This choice makes the torus basis K_{l0} prod [K_i; n_i] factor coordinatewise.
  std::set<std::vector<int>> classes;
  for (int r = 0; r <= n; ++r) {
    Weight base{};
    if (r > 0) base[r - 1] = 1;
    for (int mask = 0; mask < (1 << n); ++mask) {
      Weight lam = base;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) lam = lam + rd.alpha(i);
      if (!classes.insert(rd.class_mod_2Q(lam)).second) throw ValidationError("Lambda_0 construction failed");
      rd.lambda0.push_back(lam);
    }
  }
  return rd;
}

Weight RootDatum::alpha(int i) const {
  Weight a{};
  for (int j = 0; j < rank; ++j) a[j] = cartan[j][i];
  return a;
}

Weight RootDatum::fundamental(int i) const {
  Weight a{};
  a[i] = 1;
  return a;
}

Rat RootDatum::bilinear(const Weight& a, const Weight& b) const {
  Rat r(bil_d(a, b), lattice_index);
  r.canonicalize();
  return r;
}

int RootDatum::bil_d(const Weight& a, const Weight& b) const {
  int s = 0;
  for (int j = 0; j < rank; ++j) {
    if (!a[j]) continue;
    for (int k = 0; k < rank; ++k) s += a[j] * b[k] * form_d[j][k];
  }
  return s;
}

Weight RootDatum::reflect(int i, const Weight& a) const {
  Weight r = a;
  int c = a[i];
  Weight al = alpha(i);
  for (int j = 0; j < rank; ++j) r[j] -= c * al[j];
  return r;
}

Weight RootDatum::weight_of(const Exps& e) const {
  Weight w{};
  for (int k = 0; k < N(); ++k)
    if (e[k]) w = w + static_cast<int>(e[k]) * beta[k];
  return w;
}

std::vector<int> RootDatum::to_root_coords(const Weight& a) const {
  // lattice_index * A^-1 is integral for type A
  std::vector<int> c(rank, 0);
  const auto& ainv = cartan_inv;
  for (int i = 0; i < rank; ++i) {
    Rat s = 0;
    for (int j = 0; j < rank; ++j) s += ainv[i][j] * a[j];
    s.canonicalize();
    if (s.get_den() != 1) throw DomainError("weight is not in the root lattice");
    c[i] = static_cast<int>(s.get_num().get_si());
  }
  return c;
}

Weight RootDatum::from_root_coords(const std::vector<int>& c) const {
  Weight w{};
  for (int i = 0; i < rank; ++i)
    if (c[i]) w = w + c[i] * alpha(i);
  return w;
}

int RootDatum::height(const Weight& a) const {
  int h = 0;
  for (int x : to_root_coords(a)) h += x;
  return h;
}

int RootDatum::simple_position(int i) const {
  Weight a = alpha(i);
  for (int k = 0; k < N(); ++k)
    if (beta[k] == a) return k;
  throw DomainError("simple root missing from the root list");
}

std::vector<int> RootDatum::class_mod_2Q(const Weight& a) const {
  const auto& ainv = cartan_inv;
  std::vector<int> key(rank);
  int m = 2 * lattice_index;
  for (int i = 0; i < rank; ++i) {
    Rat s = 0;
    for (int j = 0; j < rank; ++j) s += ainv[i][j] * a[j];
    s *= lattice_index;
    s.canonicalize();
    long v = s.get_num().get_si();
    key[i] = static_cast<int>(((v % m) + m) % m);
  }
  return key;
}

int RootDatum::class_mod_Q(const Weight& a) const {
  // type A: sum_i i a_i mod (n+1); 0 means a in Q, k means a = w_k mod Q
  long s = 0;
  for (int i = 0; i < rank; ++i) s += static_cast<long>(i + 1) * a[i];
  int m = rank + 1;
  return static_cast<int>(((s % m) + m) % m);
}

Weight RootDatum::lambda0_rep(const Weight& a) const {
  auto key = class_mod_2Q(a);
  for (const auto& l : lambda0)
    if (class_mod_2Q(l) == key) return l;
  throw DomainError("no Lambda_0 representative");
}

std::vector<std::vector<int>> enumerate_positive_roots(const RootDatum& rd) {
  std::set<Weight> roots;
  std::vector<Weight> frontier;
  for (int i = 0; i < rd.rank; ++i) {
    roots.insert(rd.alpha(i));
    frontier.push_back(rd.alpha(i));
  }
  while (!frontier.empty()) {
    Weight b = frontier.back();
    frontier.pop_back();
    for (int i = 0; i < rd.rank; ++i) {
      Weight r = rd.reflect(i, b);
      if (!roots.count(r)) {
        roots.insert(r);
        frontier.push_back(r);
      }
    }
  }
  std::vector<std::vector<int>> pos;
  for (const auto& r : roots) {
    auto c = rd.to_root_coords(r);
    if (std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; })) pos.push_back(c);
  }
  return pos;
}

std::vector<Weight> positive_roots_from_w0(const RootDatum& rd) { return rd.beta; }

long kostant_partition(const RootDatum& rd, const std::vector<int>& gamma) {
  auto roots = enumerate_positive_roots(rd);
  std::map<std::pair<size_t, std::vector<int>>, long> memo;
  std::function<long(size_t, const std::vector<int>&)> go = [&](size_t k, const std::vector<int>& g) -> long {
    if (std::all_of(g.begin(), g.end(), [](int x) { return x == 0; })) return 1;
    if (k == roots.size()) return 0;
    auto key = std::make_pair(k, g);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    long total = 0;
    std::vector<int> cur = g;
    while (true) {
      total += go(k + 1, cur);
      bool ok = true;
      for (size_t i = 0; i < cur.size(); ++i) {
        cur[i] -= roots[k][i];
        if (cur[i] < 0) ok = false;
      }
      if (!ok) break;
    }
    return memo[key] = total;
  };
  return go(0, gamma);
}

std::vector<std::vector<int>> root_lattice_of_height(int rank, int h) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(rank, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == rank - 1) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      cur[i] = x;
      rec(i + 1, left - x);
    }
  };
  rec(0, h);
  return out;
}

std::string weight_str(const Weight& w, int rank) {
  std::string s = "[";
  for (int i = 0; i < rank; ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + "]";
}

}  // namespace qmanin
