#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracles {

using semsim::RelationMask;
using semsim::RelationType;
using semsim::SynsetId;
using semsim::Taxonomy;

int index_of(const Taxonomy& t, const SynsetId& id) {
  const auto& all = t.synsets();
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i].id == id) return static_cast<int>(i);
  throw std::runtime_error("oracle: unknown id " + id);
}

std::vector<std::vector<int>> floyd_warshall(const Taxonomy& t,
                                             RelationMask allowed) {
  const auto& all = t.synsets();
  const int n = static_cast<int>(all.size());
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, kUnreachable));
  for (int i = 0; i < n; ++i) dist[i][i] = 0;
  for (int i = 0; i < n; ++i) {
    for (const auto& [rel, target] : all[i].relations) {
      if (!(allowed & semsim::relation_bit(rel))) continue;
      int j = index_of(t, target);
      dist[i][j] = std::min(dist[i][j], 1);
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (dist[i][k] + dist[k][j] < dist[i][j])
          dist[i][j] = dist[i][k] + dist[k][j];
  return dist;
}

std::vector<std::vector<int>> hypernym_up_matrix(const Taxonomy& t) {
  const auto& all = t.synsets();
  const int n = static_cast<int>(all.size());
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, kUnreachable));
  for (int i = 0; i < n; ++i) dist[i][i] = 0;
  for (int i = 0; i < n; ++i)
    for (const auto& [rel, target] : all[i].relations)
      if (rel == RelationType::hypernym) dist[i][index_of(t, target)] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (dist[i][k] + dist[k][j] < dist[i][j])
          dist[i][j] = dist[i][k] + dist[k][j];
  return dist;
}

int depth(const Taxonomy& t, const SynsetId& id) {
  auto up = hypernym_up_matrix(t);
  int i = index_of(t, id);
  int best = kUnreachable;
  for (const auto& root : t.roots())
    best = std::min(best, up[i][index_of(t, root)]);
  if (best >= kUnreachable)
    throw std::runtime_error("oracle: no root above " + id);
  return best + 1;
}

std::optional<SynsetId> nearest_common_node(const Taxonomy& t,
                                            const SynsetId& a,
                                            const SynsetId& b) {
  auto up = hypernym_up_matrix(t);
  const auto& all = t.synsets();
  int ia = index_of(t, a), ib = index_of(t, b);
  std::optional<SynsetId> best;
  int best_sum = kUnreachable;
  int best_depth = -1;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (up[ia][i] >= kUnreachable || up[ib][i] >= kUnreachable) continue;
    int sum = up[ia][i] + up[ib][i];
    int d = depth(t, all[i].id);
    if (sum < best_sum || (sum == best_sum && d > best_depth) ||
        (sum == best_sum && d == best_depth && all[i].id < *best)) {
      best = all[i].id;
      best_sum = sum;
      best_depth = d;
    }
  }
  return best;
}

std::set<SynsetId> reachable_set(const Taxonomy& t, const SynsetId& start,
                                 RelationType rel) {
  std::set<SynsetId> seen;
  std::vector<SynsetId> stack{start};
  while (!stack.empty()) {
    SynsetId cur = stack.back();
    stack.pop_back();
    for (const auto& [r, target] : t.synset(cur).relations) {
      if (r != rel || seen.count(target) || target == start) continue;
      seen.insert(target);
      stack.push_back(target);
    }
  }
  return seen;
}

namespace {

void walk_paths(const Taxonomy& t, const SynsetId& current,
                const SynsetId& goal, RelationMask allowed, int max_len,
                std::vector<SynsetId>& nodes,
                std::vector<RelationType>& relations,
                std::vector<SimplePath>& out) {
  if (current == goal) {
    SimplePath path;
    path.nodes = nodes;
    path.relations = relations;
    path.direction_changes = semsim::count_direction_changes(relations);
    out.push_back(std::move(path));
    return;
  }
  if (static_cast<int>(relations.size()) >= max_len) return;
  for (const auto& [rel, target] : t.synset(current).relations) {
    if (!(allowed & semsim::relation_bit(rel))) continue;
    if (std::find(nodes.begin(), nodes.end(), target) != nodes.end()) continue;
    nodes.push_back(target);
    relations.push_back(rel);
    walk_paths(t, target, goal, allowed, max_len, nodes, relations, out);
    nodes.pop_back();
    relations.pop_back();
  }
}

}  // namespace

std::vector<SimplePath> simple_paths(const Taxonomy& t, const SynsetId& a,
                                     const SynsetId& b, RelationMask allowed,
                                     int max_len) {
  std::vector<SimplePath> out;
  std::vector<SynsetId> nodes{a};
  std::vector<RelationType> relations;
  walk_paths(t, a, b, allowed, max_len, nodes, relations, out);
  return out;
}

semsim::ICTable corpus_ic(const Taxonomy& t, const semsim::FrequencyTable& freq,
                          double smoothing, bool split_sense_counts) {
  std::map<SynsetId, double> credit;
  for (const auto& s : t.synsets()) credit[s.id] = smoothing;
  for (const auto& [word, count] : freq.counts) {
    std::vector<SynsetId> senses;
    for (const auto& s : t.synsets())
      if (std::find(s.lemmas.begin(), s.lemmas.end(), word) != s.lemmas.end())
        senses.push_back(s.id);
    if (senses.empty()) continue;
    double share = split_sense_counts ? count / double(senses.size()) : count;
    for (const auto& id : senses) credit[id] += share;
  }

  semsim::ICTable table;
  table.source = semsim::IcSource::corpus;
  std::map<SynsetId, double> mass;
  for (const auto& s : t.synsets()) {
    double m = credit[s.id];
    for (const auto& below : reachable_set(t, s.id, RelationType::hyponym))
      m += credit[below];
    mass[s.id] = m;
  }
  double total = 0;
  for (const auto& root : t.roots()) total += mass[root];
  for (const auto& s : t.synsets()) {
    double p = mass[s.id] / total;
    table.mass[s.id] = p;
    table.ic[s.id] = -std::log(p);
  }
  return table;
}

namespace {

std::vector<double> counting_ranks(const std::vector<double>& values) {
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    int less = 0, equal = 0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (values[j] < values[i]) ++less;
      if (j != i && values[j] == values[i]) ++equal;
    }
    ranks[i] = less + 1 + equal / 2.0;
  }
  return ranks;
}

}  // namespace

double pearson_bruteforce(const std::vector<double>& x,
                          const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
  }
  return (n * sxy - sx * sy) /
         std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

double spearman_bruteforce(const std::vector<double>& x,
                           const std::vector<double>& y) {
  return pearson_bruteforce(counting_ranks(x), counting_ranks(y));
}

double spearman_closed_form(const std::vector<double>& x,
                            const std::vector<double>& y) {
  auto rx = counting_ranks(x);
  auto ry = counting_ranks(y);
  const double n = static_cast<double>(x.size());
  double sum_d2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    sum_d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  return 1.0 - 6.0 * sum_d2 / (n * (n * n - 1.0));
}

std::vector<double> finite_difference(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> at, double step) {
  std::vector<double> grad(at.size());
  for (std::size_t i = 0; i < at.size(); ++i) {
    double saved = at[i];
    at[i] = saved + step;
    double up = f(at);
    at[i] = saved - step;
    double down = f(at);
    at[i] = saved;
    grad[i] = (up - down) / (2 * step);
  }
  return grad;
}

}  // namespace oracles
