#include "shortcut_splits/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "shortcut_splits/errors.hpp"

namespace shortcut_splits {

namespace {

// Sorted-vector set helpers; all id lists in splits are sorted.
std::size_t intersection_size(const std::vector<std::string>& a,
                              const std::vector<std::string>& b) {
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

std::string format_ratio(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// File-name-safe slug for a concept key: [A-Za-z0-9._-] kept, space becomes
// '_', everything else percent-encoded.
std::string slugify(const std::string& key) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : key) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
        c == '-') {
      out.push_back(static_cast<char>(c));
    } else if (c == ' ') {
      out.push_back('_');
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

SimilarityMatrix jaccard_head_similarity(const CopySplits& train_copy) {
  SimilarityMatrix m;
  m.kind = SimilarityKind::jaccard;
  for (ShortcutKind x : kAllShortcuts) {
    for (ShortcutKind y : kAllShortcuts) {
      const auto& hx = train_copy.of(x).head_ids;
      const auto& hy = train_copy.of(y).head_ids;
      const std::size_t inter = intersection_size(hx, hy);
      const std::size_t uni = hx.size() + hy.size() - inter;
      m.values[index_of(x)][index_of(y)] =
          uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
    }
  }
  return m;
}

SimilarityMatrix coincidence_matrix(
    const std::array<std::vector<std::string>, kShortcutCount>& ood_sets) {
  SimilarityMatrix m;
  m.kind = SimilarityKind::coincidence;
  for (ShortcutKind x : kAllShortcuts) {
    for (ShortcutKind y : kAllShortcuts) {
      const auto& sx = ood_sets[index_of(x)];
      const auto& sy = ood_sets[index_of(y)];
      m.values[index_of(x)][index_of(y)] =
          sy.empty() ? 0.0
                     : static_cast<double>(intersection_size(sx, sy)) /
                           static_cast<double>(sy.size());
    }
  }
  return m;
}

double imbalance_degree(const std::vector<Group>& groups) {
  if (groups.empty()) throw UndefinedDegree("no groups for this shortcut");
  std::size_t covered = 0;
  for (const Group& g : groups) covered += g.member_ids.size();
  double degree = 0.0;
  for (const Group& g : groups) {
    degree += g.entropy_norm * (static_cast<double>(g.member_ids.size()) /
                                static_cast<double>(covered));
  }
  return degree;
}

std::vector<DistributionRow> export_distribution(const std::vector<Group>& train_groups,
                                                 const std::vector<Group>& ood_groups,
                                                 const ConceptKey& key) {
  auto find_group = [&key](const std::vector<Group>& groups) -> const Group* {
    for (const Group& g : groups) {
      if (g.key == key) return &g;
    }
    return nullptr;
  };
  const Group* train = find_group(train_groups);
  if (!train) throw UnknownKey("concept key not in training groups: " + key);
  const Group* ood = find_group(ood_groups);

  std::vector<DistributionRow> rows;
  for (const auto& [answer, count] : train->answer_hist) {
    rows.push_back({answer, count, 0});
  }
  if (ood) {
    for (const auto& [answer, count] : ood->answer_hist) {
      auto it = std::find_if(rows.begin(), rows.end(),
                             [&](const DistributionRow& r) { return r.answer == answer; });
      if (it == rows.end()) {
        rows.push_back({answer, 0, count});
      } else {
        it->ood_count = count;
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const DistributionRow& a, const DistributionRow& b) {
    if (a.train_count != b.train_count) return a.train_count > b.train_count;
    return a.answer < b.answer;
  });
  return rows;
}

void write_similarity_csv(const SimilarityMatrix& matrix, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "shortcut";
  for (ShortcutKind y : kAllShortcuts) out << ',' << to_string(y);
  out << '\n';
  for (ShortcutKind x : kAllShortcuts) {
    out << to_string(x);
    for (ShortcutKind y : kAllShortcuts) out << ',' << format_ratio(matrix.at(x, y));
    out << '\n';
  }
}

void write_imbalance_csv(const std::array<std::optional<double>, kShortcutCount>& degrees,
                         const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "shortcut,imbalance_degree\n";
  for (ShortcutKind kind : kAllShortcuts) {
    const auto& degree = degrees[index_of(kind)];
    if (!degree) continue;  // shortcut with no training groups
    out << to_string(kind) << ',' << format_ratio(*degree) << '\n';
  }
}

void write_distribution_csv(const std::vector<DistributionRow>& rows,
                            const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "answer,train_count,ood_count\n";
  for (const DistributionRow& r : rows) {
    out << r.answer << ',' << r.train_count << ',' << r.ood_count << '\n';
  }
}

void write_all_stats(const Dataset& dataset,
                     const ConceptTable& concepts,
                     const BenchmarkSplits& splits,
                     const std::filesystem::path& dir,
                     const StatsOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string());

  write_similarity_csv(jaccard_head_similarity(splits.train_copy), dir / "jaccard.csv");

  std::array<std::vector<std::string>, kShortcutCount> ood_sets;
  for (ShortcutKind kind : kAllShortcuts) {
    ood_sets[index_of(kind)] = splits.test_copy.of(kind).tail_ids;
  }
  write_similarity_csv(coincidence_matrix(ood_sets), dir / "coincidence.csv");

  std::array<std::optional<double>, kShortcutCount> degrees;
  std::array<std::vector<Group>, kShortcutCount> train_groups;
  for (ShortcutKind kind : kAllShortcuts) {
    train_groups[index_of(kind)] =
        group_by_concept(dataset, concepts, splits.train_ids, kind);
    if (!train_groups[index_of(kind)].empty()) {
      degrees[index_of(kind)] = imbalance_degree(train_groups[index_of(kind)]);
    }
  }
  write_imbalance_csv(degrees, dir / "imbalance.csv");

  // Distribution exports: the largest training groups whose key also shows
  // up in the shortcut's OOD set.
  for (ShortcutKind kind : kAllShortcuts) {
    const std::vector<Group> ood_groups =
        group_by_concept(dataset, concepts, splits.test_copy.of(kind).tail_ids, kind);
    std::vector<const Group*> candidates;
    for (const Group& og : ood_groups) {
      for (const Group& tg : train_groups[index_of(kind)]) {
        if (tg.key == og.key) {
          candidates.push_back(&tg);
          break;
        }
      }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Group* a, const Group* b) {
      if (a->member_ids.size() != b->member_ids.size()) {
        return a->member_ids.size() > b->member_ids.size();
      }
      return a->key < b->key;
    });
    const std::size_t keep = std::min(options.dist_top, candidates.size());
    for (std::size_t i = 0; i < keep; ++i) {
      const auto rows =
          export_distribution(train_groups[index_of(kind)], ood_groups, candidates[i]->key);
      std::string name = "dist." + std::string(to_string(kind)) + "." +
                         slugify(candidates[i]->key) + ".csv";
      write_distribution_csv(rows, dir / name);
    }
  }
}

}  // namespace shortcut_splits
