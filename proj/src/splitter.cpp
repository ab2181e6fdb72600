#include "shortcut_splits/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "shortcut_splits/parallel.hpp"
#include "shortcut_splits/rng.hpp"

namespace shortcut_splits {

namespace {

using nlohmann::ordered_json;

std::vector<std::string> read_id_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

void write_id_file(const std::vector<std::string>& ids, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const std::string& id : ids) out << id << '\n';
  if (!out) throw IoError("failed while writing " + path.string());
}

std::string copy_file_name(const std::string& prefix, ShortcutKind kind, const char* part) {
  std::string name;
  if (!prefix.empty()) name = prefix + ".";
  name += std::string(to_string(kind)) + "." + part + ".ids";
  return name;
}

}  // namespace

void SplitRatios::validate() const {
  if (!(train > 0.0) || !(val > 0.0) || !(test > 0.0)) {
    throw InvalidRatios("all ratios must be positive");
  }
  if (std::abs(train + val + test - 1.0) > 1e-9) {
    throw InvalidRatios("ratios must sum to 1");
  }
}

PartitionSizes split_sizes(std::size_t n, const SplitRatios& ratios) {
  ratios.validate();
  // The 1e-9 nudge absorbs binary representation error (0.7 * 10 slightly
  // below 7) without ever crossing a true fractional boundary.
  PartitionSizes sizes;
  sizes.train = static_cast<std::size_t>(std::floor(ratios.train * static_cast<double>(n) + 1e-9));
  sizes.val = static_cast<std::size_t>(std::floor(ratios.val * static_cast<double>(n) + 1e-9));
  if (sizes.train + sizes.val > n) throw InvalidRatios("ratios exceed corpus size");
  sizes.test = n - sizes.train - sizes.val;
  return sizes;
}

std::tuple<std::vector<std::string>, std::vector<std::string>, std::vector<std::string>>
partition_dataset(const Dataset& dataset, const SplitRatios& ratios, std::uint64_t seed) {
  if (dataset.size() < 3) throw EmptyCorpus("need at least 3 samples to partition");
  const PartitionSizes sizes = split_sizes(dataset.size(), ratios);

  std::vector<std::string> ids;
  ids.reserve(dataset.size());
  for (const Sample& s : dataset.samples()) ids.push_back(s.id);
  std::sort(ids.begin(), ids.end());  // canonical start order

  DeterministicRng rng(seed);
  fisher_yates_shuffle(ids, rng);

  std::vector<std::string> train(ids.begin(), ids.begin() + sizes.train);
  std::vector<std::string> val(ids.begin() + sizes.train, ids.begin() + sizes.train + sizes.val);
  std::vector<std::string> test(ids.begin() + sizes.train + sizes.val, ids.end());
  std::sort(train.begin(), train.end());
  std::sort(val.begin(), val.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(val), std::move(test)};
}

std::vector<Group> group_by_concept(const Dataset& dataset,
                                    const ConceptTable& concepts,
                                    const std::vector<std::string>& split_ids,
                                    ShortcutKind shortcut) {
  std::map<ConceptKey, Group> by_key;
  for (const std::string& id : split_ids) {
    auto it = concepts.find(id);
    if (it == concepts.end()) throw MissingConcepts("no concept vector for sample " + id);
    const auto& key = it->second.get(shortcut);
    if (!key) continue;
    Group& g = by_key[*key];
    if (g.member_ids.empty()) {
      g.shortcut = shortcut;
      g.key = *key;
    }
    const std::string& answer = dataset.at(id).primary_answer;
    g.member_ids.push_back(id);
    g.member_answers.push_back(answer);
    ++g.answer_hist[answer];
  }
  std::vector<Group> groups;
  groups.reserve(by_key.size());
  for (auto& [key, g] : by_key) {
    // Sort members by id, keeping answers aligned.
    std::vector<std::size_t> order(g.member_ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&g](std::size_t a, std::size_t b) {
      return g.member_ids[a] < g.member_ids[b];
    });
    Group sorted;
    sorted.shortcut = g.shortcut;
    sorted.key = g.key;
    sorted.answer_hist = std::move(g.answer_hist);
    sorted.member_ids.reserve(order.size());
    sorted.member_answers.reserve(order.size());
    for (std::size_t i : order) {
      sorted.member_ids.push_back(std::move(g.member_ids[i]));
      sorted.member_answers.push_back(std::move(g.member_answers[i]));
    }
    sorted.entropy_norm = group_entropy(sorted);
    groups.push_back(std::move(sorted));
  }
  return groups;
}

double group_entropy(const Group& group) {
  const std::size_t m = group.answer_hist.size();
  if (m <= 1) return 0.0;
  double total = 0.0;
  for (const auto& [answer, count] : group.answer_hist) total += count;
  double entropy = 0.0;
  for (const auto& [answer, count] : group.answer_hist) {
    const double p = count / total;
    entropy -= p * std::log(p);
  }
  const double norm = entropy / std::log(static_cast<double>(m));
  return std::clamp(norm, 0.0, 1.0);
}

std::set<ConceptKey> flag_imbalanced(const std::vector<Group>& groups, double threshold) {
  std::set<ConceptKey> keys;
  for (const Group& g : groups) {
    if (g.entropy_norm < threshold) keys.insert(g.key);
  }
  return keys;
}

std::pair<std::vector<std::string>, std::vector<std::string>> split_head_tail(
    const Group& group, double rare_factor, double entropy_threshold) {
  if (!(group.entropy_norm < entropy_threshold)) {
    throw NotImbalanced("group '" + group.key + "' is not imbalanced");
  }
  std::vector<std::string> head;
  std::vector<std::string> tail;
  const std::size_t m = group.answer_hist.size();
  if (m <= 1) {
    head = group.member_ids;  // single-answer groups have no rare class
    return {std::move(head), std::move(tail)};
  }
  const double mean = static_cast<double>(group.member_ids.size()) / static_cast<double>(m);
  const double cutoff = rare_factor * mean;
  // At least one class always sits below the cutoff when m >= 2: all counts
  // reaching it would need a total of rare_factor * size.
  std::set<std::string> rare;
  for (const auto& [answer, count] : group.answer_hist) {
    if (static_cast<double>(count) < cutoff) rare.insert(answer);
  }
  // member_ids is sorted, so head/tail come out sorted.
  for (std::size_t i = 0; i < group.member_ids.size(); ++i) {
    if (rare.count(group.member_answers[i])) {
      tail.push_back(group.member_ids[i]);
    } else {
      head.push_back(group.member_ids[i]);
    }
  }
  return {std::move(head), std::move(tail)};
}

CopySplits build_copy_splits(const Dataset& dataset,
                             const ConceptTable& concepts,
                             const std::vector<std::string>& ids,
                             double entropy_threshold,
                             double rare_factor,
                             unsigned threads) {
  CopySplits copy;
  parallel_chunks(kShortcutCount, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t k = begin; k < end; ++k) {
      const ShortcutKind kind = kAllShortcuts[k];
      const std::vector<Group> groups = group_by_concept(dataset, concepts, ids, kind);
      HeadTailSplit& ht = copy.per_shortcut[k];
      ht.shortcut = kind;
      copy.group_totals[k] = groups.size();
      for (const Group& g : groups) {
        if (!(g.entropy_norm < entropy_threshold)) continue;
        ht.imbalanced_keys.insert(g.key);
        auto [head, tail] = split_head_tail(g, rare_factor, entropy_threshold);
        ht.head_ids.insert(ht.head_ids.end(), head.begin(), head.end());
        ht.tail_ids.insert(ht.tail_ids.end(), tail.begin(), tail.end());
      }
      std::sort(ht.head_ids.begin(), ht.head_ids.end());
      std::sort(ht.tail_ids.begin(), ht.tail_ids.end());
    }
  });
  return copy;
}

BenchmarkSplits assemble_benchmark(const Dataset& dataset,
                                   const ConceptTable& concepts,
                                   const SplitRatios& ratios,
                                   std::uint64_t seed,
                                   double entropy_threshold,
                                   double rare_factor,
                                   unsigned threads) {
  BenchmarkSplits out;
  out.seed = seed;
  out.entropy_threshold = entropy_threshold;
  out.rare_factor = rare_factor;
  std::tie(out.train_ids, out.val_ids, out.iid_test_ids) =
      partition_dataset(dataset, ratios, seed);
  out.test_copy =
      build_copy_splits(dataset, concepts, out.iid_test_ids, entropy_threshold, rare_factor, threads);
  out.train_copy =
      build_copy_splits(dataset, concepts, out.train_ids, entropy_threshold, rare_factor, threads);
  out.val_copy =
      build_copy_splits(dataset, concepts, out.val_ids, entropy_threshold, rare_factor, threads);
  return out;
}

std::vector<std::string> compose_training_mix(const HeadTailSplit& head_tail,
                                              double head_fraction,
                                              std::size_t total,
                                              std::uint64_t seed) {
  if (head_fraction < 0.0 || head_fraction > 1.0) {
    throw InvalidConfig("head_fraction must be in [0, 1]");
  }
  const std::size_t n_head =
      static_cast<std::size_t>(std::floor(head_fraction * static_cast<double>(total) + 1e-9));
  const std::size_t n_tail = total - n_head;
  if (n_head > head_tail.head_ids.size() || n_tail > head_tail.tail_ids.size()) {
    throw InsufficientSamples("head/tail pools too small for requested mix");
  }
  DeterministicRng rng(seed);
  std::vector<std::string> mix = sample_without_replacement(head_tail.head_ids, n_head, rng);
  std::vector<std::string> tail_part =
      sample_without_replacement(head_tail.tail_ids, n_tail, rng);
  mix.insert(mix.end(), tail_part.begin(), tail_part.end());
  std::sort(mix.begin(), mix.end());
  return mix;
}

namespace {

void save_copy(const CopySplits& copy, const std::string& prefix,
               const std::filesystem::path& dir) {
  for (ShortcutKind kind : kAllShortcuts) {
    const HeadTailSplit& ht = copy.of(kind);
    write_id_file(ht.head_ids, dir / copy_file_name(prefix, kind, "head"));
    write_id_file(ht.tail_ids, dir / copy_file_name(prefix, kind, "tail"));
  }
}

ordered_json copy_stats(const CopySplits& copy) {
  ordered_json stats = ordered_json::object();
  for (ShortcutKind kind : kAllShortcuts) {
    const HeadTailSplit& ht = copy.of(kind);
    stats[std::string(to_string(kind))] = {
        {"groups", copy.group_totals[index_of(kind)]},
        {"imbalanced_groups", ht.imbalanced_keys.size()},
        {"head", ht.head_ids.size()},
        {"tail", ht.tail_ids.size()},
    };
  }
  return stats;
}

}  // namespace

void save_splits(const BenchmarkSplits& splits, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string());

  write_id_file(splits.train_ids, dir / "train.ids");
  write_id_file(splits.val_ids, dir / "val.ids");
  write_id_file(splits.iid_test_ids, dir / "iid_test.ids");
  save_copy(splits.test_copy, "", dir);
  save_copy(splits.train_copy, "train", dir);
  if (splits.val_copy) save_copy(*splits.val_copy, "val", dir);

  ordered_json stats;
  stats["seed"] = splits.seed;
  stats["entropy_threshold"] = splits.entropy_threshold;
  stats["rare_factor"] = splits.rare_factor;
  stats["totals"] = {
      {"train", splits.train_ids.size()},
      {"val", splits.val_ids.size()},
      {"iid_test", splits.iid_test_ids.size()},
  };
  stats["test"] = copy_stats(splits.test_copy);
  stats["train_copy"] = copy_stats(splits.train_copy);
  if (splits.val_copy) stats["val_copy"] = copy_stats(*splits.val_copy);

  std::ofstream out(dir / "stats.json", std::ios::binary);
  if (!out) throw IoError("cannot write stats.json");
  out << stats.dump(2) << '\n';
}

BenchmarkSplits load_splits(const std::filesystem::path& dir) {
  BenchmarkSplits splits;
  splits.train_ids = read_id_file(dir / "train.ids");
  splits.val_ids = read_id_file(dir / "val.ids");
  splits.iid_test_ids = read_id_file(dir / "iid_test.ids");

  auto load_copy = [&dir](const std::string& prefix) {
    CopySplits copy;
    for (ShortcutKind kind : kAllShortcuts) {
      HeadTailSplit& ht = copy.per_shortcut[index_of(kind)];
      ht.shortcut = kind;
      ht.head_ids = read_id_file(dir / copy_file_name(prefix, kind, "head"));
      ht.tail_ids = read_id_file(dir / copy_file_name(prefix, kind, "tail"));
    }
    return copy;
  };
  splits.test_copy = load_copy("");
  splits.train_copy = load_copy("train");
  if (std::filesystem::exists(dir / "val.QT.head.ids")) {
    splits.val_copy = load_copy("val");
  }

  std::ifstream stats_in(dir / "stats.json", std::ios::binary);
  if (stats_in) {
    const auto stats = nlohmann::json::parse(stats_in, nullptr, false);
    if (!stats.is_discarded()) {
      splits.seed = stats.value("seed", std::uint64_t{0});
      splits.entropy_threshold = stats.value("entropy_threshold", kDefaultEntropyThreshold);
      splits.rare_factor = stats.value("rare_factor", kDefaultRareFactor);
    }
  }
  return splits;
}

}  // namespace shortcut_splits
