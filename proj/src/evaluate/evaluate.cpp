#include "choreo/evaluate.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "choreo/error.hpp"
#include "choreo/objective.hpp"
#include "choreo/search.hpp"

namespace choreo {
namespace {

ScoreCell summarize(const std::vector<std::optional<double>>& values) {
  ScoreCell cell;
  cell.n_total = values.size();
  double sum = 0.0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++cell.n_defined;
    }
  }
  if (cell.n_defined == 0) return cell;
  double mean = sum / static_cast<double>(cell.n_defined);
  cell.mean = mean;
  if (cell.n_defined > 1) {
    double ss = 0.0;
    for (const auto& v : values) {
      if (v) ss += (*v - mean) * (*v - mean);
    }
    cell.stddev = std::sqrt(ss / static_cast<double>(cell.n_defined - 1));
  }
  return cell;
}

std::string number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ScoreRow score_row(std::string approach, const MusicMatrix& music, const std::vector<DanceSequence>& dances) {
  ScoreRow row;
  row.approach = std::move(approach);
  for (std::size_t r = 0; r < 3; ++r) {
    std::vector<std::optional<double>> values;
    for (const auto& d : dances) values.push_back(alignment_score(music, d, kAllRepresentations[r]).pearson);
    row.by_representation[r] = summarize(values);
  }
  return row;
}

}  // namespace

ScoreTable score_table(const MusicMatrix& music, const BeatTimes& beats, double duration_s,
                       const AgentConfig& agent, std::span<const std::uint64_t> seeds, std::size_t chunk_size) {
  agent.validate();
  if (seeds.empty()) fail(ErrorCode::InvalidArgument, "score table needs at least one seed");

  ScoreTable table;
  for (Representation repr : kAllRepresentations) {
    SearchConfig cfg{chunk_size, repr, agent};
    SearchResult found = greedy_chunked_search(music, cfg);
    table.rows.push_back(score_row("search-" + std::string(to_string(repr)), music, {found.sequence}));
  }

  auto beat_steps = beats_to_steps(beats, static_cast<std::size_t>(agent.n_steps), duration_s);
  for (BaselineKind kind : kAllBaselines) {
    std::vector<DanceSequence> dances;
    if (is_random(kind)) {
      for (std::uint64_t seed : seeds) dances.push_back(generate_baseline(kind, agent, beat_steps, seed));
    } else {
      dances.push_back(generate_baseline(kind, agent, beat_steps));
    }
    table.rows.push_back(score_row(std::string(to_string(kind)), music, dances));
  }
  return table;
}

const ScoreRow* ScoreTable::find(std::string_view approach) const {
  for (const auto& row : rows) {
    if (row.approach == approach) return &row;
  }
  return nullptr;
}

std::string ScoreTable::to_csv() const {
  std::string out = "approach";
  for (Representation r : kAllRepresentations) {
    std::string name(to_string(r));
    out += "," + name + "_mean," + name + "_std," + name + "_defined," + name + "_total";
  }
  out += "\n";
  for (const auto& row : rows) {
    out += row.approach;
    for (const auto& cell : row.by_representation) {
      out += "," + (cell.mean ? number(*cell.mean) : std::string("undefined"));
      out += "," + number(cell.stddev);
      out += "," + std::to_string(cell.n_defined) + "," + std::to_string(cell.n_total);
    }
    out += "\n";
  }
  return out;
}

std::string ScoreTable::to_text() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-20s %22s %22s %22s\n", "approach", "state", "action", "state_action");
  std::string out = buf;
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%-20s", row.approach.c_str());
    out += buf;
    for (const auto& cell : row.by_representation) {
      if (!cell.mean) {
        std::snprintf(buf, sizeof buf, " %22s", "undefined");
      } else if (cell.n_total > 1) {
        std::snprintf(buf, sizeof buf, " %+9.4f +/- %-7.4f%s", *cell.mean, cell.stddev,
                      cell.n_defined < cell.n_total ? "*" : " ");
      } else {
        std::snprintf(buf, sizeof buf, " %+9.4f%13s", *cell.mean, "");
      }
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace choreo
