// Copyright (c) 2026 vpriv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "corpus.h"
#include "oracles.h"
#include "vpriv/attack_sim.h"
#include "vpriv/error.h"
#include "vpriv/f0_transform.h"
#include "vpriv/io_formats.h"
#include "vpriv/metrics.h"
#include "vpriv/pipeline.h"
#include "vpriv/plda.h"
#include "vpriv/pseudo_speaker.h"

namespace vpriv {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

Outcome StatMatching() {
  const auto start = Clock::now();
  std::mt19937_64 gen(101);
  std::uniform_int_distribution<int> n_voiced(5, 500);
  std::uniform_real_distribution<double> hz(60, 400);
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_real_distribution<double> t_mean(std::log(60.0),
                                                std::log(400.0));
  std::uniform_real_distribution<double> t_std(0.01, 0.6);
  Outcome o;
  double worst = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    F0Contour c;
    c.utterance_id = "u" + std::to_string(rep);
    const int voiced = n_voiced(gen);
    const double unvoiced_rate = coin(gen) * 0.6;
    for (int v = 0; v < voiced;) {
      if (coin(gen) < unvoiced_rate) {
        c.values.push_back(0.0);
      } else {
        c.values.push_back(hz(gen));
        ++v;
      }
    }
    const LogF0Stats target{t_mean(gen), t_std(gen), 0};
    const F0Contour out = TransformContour(c, ComputeLogF0Stats(c), target);
    const LogF0Stats got = ComputeLogF0Stats(out);
    worst = std::max({worst, std::abs(got.mean - target.mean),
                      std::abs(got.std - target.std)});
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      if ((c.values[i] == 0.0) != (out.values[i] == 0.0)) {
        o.Fail(Fmt("unvoiced set changed in contour %d", rep));
      }
    }
  }
  const double secs = Seconds(start);
  if (worst > 1e-9) o.Fail(Fmt("max stat error %.3g", worst));
  if (secs >= 5) o.Fail(Fmt("took %.2f s", secs));
  if (o.pass) o.detail = Fmt("max stat error %.3g, %.3f s", worst, secs);
  return o;
}

Outcome ClosedFormF0() {
  const F0Contour c{"u", {100, 0, 400}, 10.0};
  const LogF0Stats target{std::log(300.0), std::log(2.0) / 2, 0};
  const F0Contour out = TransformContour(c, ComputeLogF0Stats(c), target);
  // Independently computed: 300/sqrt(2) and 300*sqrt(2).
  const double expect[3] = {212.13203435596426, 0.0, 424.26406871192851};
  Outcome o;
  double worst = 0;
  for (int i = 0; i < 3; ++i) {
    if (expect[i] == 0.0) {
      if (out.values[i] != 0.0) o.Fail("unvoiced frame changed");
      continue;
    }
    worst = std::max(worst, std::abs(out.values[i] - expect[i]) / expect[i]);
  }
  if (worst > 1e-9) o.Fail(Fmt("relative error %.3g", worst));
  if (o.pass) {
    o.detail = Fmt("[%.12g, 0, %.12g], relative error %.3g", out.values[0],
                   out.values[2], worst);
  }
  return o;
}

Outcome PldaOracle() {
  const auto start = Clock::now();
  std::mt19937_64 gen(303);
  std::uniform_int_distribution<int> dims(1, 3);
  std::uniform_real_distribution<double> psi_d(0.05, 8);
  std::normal_distribution<double> n(0, 1);
  Outcome o;
  double worst = 0, worst_zero = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t d = dims(gen);
    PldaModel m;
    m.dim = d;
    m.mean.resize(d);
    m.psi.resize(d);
    m.transform.resize(d * d);
    for (auto& x : m.mean) x = n(gen);
    for (auto& x : m.psi) x = psi_d(gen);
    for (auto& x : m.transform) x = 0.5 * n(gen);
    for (std::size_t i = 0; i < d; ++i) m.transform[i * d + i] += 2.0;
    m.Validate();
    std::vector<double> x1(d), x2(d);
    for (auto& x : x1) x = 2 * n(gen);
    for (auto& x : x2) x = 2 * n(gen);
    const PldaOptions raw{false};
    const auto u = Project(m, x1, raw), v = Project(m, x2, raw);
    const double got = PldaScore(m, u, v);
    worst = std::max(worst, std::abs(got - oracle::IntegratedLlr(m.psi, u, v)));

    PldaModel zero = m;
    std::fill(zero.psi.begin(), zero.psi.end(), 0.0);
    worst_zero = std::max(worst_zero, std::abs(PldaScore(zero, u, v)));
  }
  const double secs = Seconds(start);
  if (worst > 1e-4) o.Fail(Fmt("max deviation from integration %.3g", worst));
  if (worst_zero > 1e-12) o.Fail(Fmt("psi=0 score %.3g", worst_zero));
  if (secs >= 60) o.Fail(Fmt("took %.2f s", secs));
  if (o.pass) {
    o.detail = Fmt("max deviation %.3g, psi=0 max |score| %.3g, %.2f s", worst,
                   worst_zero, secs);
  }
  return o;
}

// Every multiset of at most `max_size` elements of `grid`.
std::vector<std::vector<double>> Multisets(const std::vector<double>& grid,
                                           std::size_t max_size) {
  std::vector<std::vector<double>> out;
  std::vector<double> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == max_size) return;
    for (std::size_t i = from; i < grid.size(); ++i) {
      cur.push_back(grid[i]);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

Outcome MetricsOracle() {
  const auto start = Clock::now();
  Outcome o;
  const std::vector<double> grid{-2.0, -0.5, 0.0, 0.75, 1.5, 3.0};
  const auto sides = Multisets(grid, 6);
  double worst_eer = 0;
  std::size_t n_sets = 0;
  for (const auto& tar : sides) {
    for (const auto& non : sides) {
      const double got = Eer({tar, non});
      worst_eer =
          std::max(worst_eer, std::abs(got - oracle::ExhaustiveEer(tar, non)));
      ++n_sets;
    }
  }
  if (worst_eer > 1e-9) o.Fail(Fmt("max EER deviation %.3g", worst_eer));

  std::mt19937_64 gen(404);
  std::uniform_int_distribution<int> size(1, 30);
  std::normal_distribution<double> n(0, 2);
  std::uniform_real_distribution<double> shift(-3, 3);
  auto random_set = [&] {
    TrialScoreSet s;
    const double d = shift(gen);
    for (int i = size(gen); i > 0; --i) s.target_scores.push_back(n(gen) + d);
    for (int i = size(gen); i > 0; --i) s.nontarget_scores.push_back(n(gen));
    return s;
  };
  int violations = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    const TrialScoreSet s = random_set();
    if (MinCllr(s) > Cllr(s) + 1e-12) ++violations;
  }
  if (violations > 0) o.Fail(Fmt("min_cllr > cllr on %d sets", violations));

  std::uniform_real_distribution<double> coef(0.1, 3);
  double worst_inv = 0;
  for (int t = 0; t < 20; ++t) {
    const double a = coef(gen), b = shift(gen), c = coef(gen);
    // a, c > 0, so f is strictly increasing.
    auto f = [&](double x) { return a * x + c * std::sinh(0.3 * x) + b; };
    for (int rep = 0; rep < 50; ++rep) {
      TrialScoreSet s = random_set();
      const double before = MinCllr(s);
      for (auto& x : s.target_scores) x = f(x);
      for (auto& x : s.nontarget_scores) x = f(x);
      worst_inv = std::max(worst_inv, std::abs(MinCllr(s) - before));
    }
  }
  if (worst_inv > 1e-9) o.Fail(Fmt("min_cllr moved by %.3g", worst_inv));
  const double secs = Seconds(start);
  if (secs >= 60) o.Fail(Fmt("took %.2f s", secs));
  if (o.pass) {
    o.detail =
        Fmt("%zu grid sets, max EER deviation %.3g, min_cllr<=cllr on 10000 "
            "sets, max transform drift %.3g, %.2f s",
            n_sets, worst_eer, worst_inv, secs);
  }
  return o;
}

Outcome CalibrationFixedPoints() {
  Outcome o;
  const TrialScoreSet zeros{{0, 0, 0}, {0, 0, 0, 0}};
  if (Cllr(zeros) != 1.0) o.Fail(Fmt("all-zero cllr %.17g", Cllr(zeros)));
  const TrialScoreSet sep{{2, 3, 4.5}, {-1, 0, 1.5}};
  if (!(MinCllr(sep) < 1e-9))
    o.Fail(Fmt("separated min_cllr %.3g", MinCllr(sep)));
  if (Eer(sep) != 0.0) o.Fail(Fmt("separated EER %.3g", Eer(sep)));
  if (o.pass) {
    o.detail = Fmt("cllr(0)=%.17g, min_cllr(sep)=%.3g, eer(sep)=%g",
                   Cllr(zeros), MinCllr(sep), Eer(sep));
  }
  return o;
}

SpeakerPool RandomPool(std::size_t per_gender, std::size_t dim,
                       std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n(0, 1);
  std::uniform_real_distribution<double> f0(4.6, 5.5);
  SpeakerPool pool;
  for (Gender g : {Gender::kFemale, Gender::kMale}) {
    for (std::size_t i = 0; i < per_gender; ++i) {
      PoolSpeaker s;
      s.speaker_id = std::string(1, GenderCode(g)) + std::to_string(10000 + i);
      s.gender = g;
      s.mean_embedding.resize(dim);
      for (double& x : s.mean_embedding) x = n(gen);
      s.f0_stats = {f0(gen), 0.1 + 0.1 * n(gen) * n(gen), 100};
      s.f0_stats.std = std::abs(s.f0_stats.std) + 0.01;
      pool.speakers.push_back(std::move(s));
    }
  }
  pool.plda = PldaModel::Diagonal(std::vector<double>(dim, 3.0));
  return pool;
}

Outcome SelectionContract() {
  const SpeakerPool pool = RandomPool(250, 16, 606);
  SpeakerPool shuffled = pool;
  std::mt19937_64 gen(607);
  std::shuffle(shuffled.speakers.begin(), shuffled.speakers.end(), gen);
  std::normal_distribution<double> n(0, 1);
  Outcome o;
  for (int rep = 0; rep < 100; ++rep) {
    SelectionConfig cfg;
    cfg.k_far = 200;
    cfg.k_sel = 100;
    cfg.global_seed = 77;
    cfg.gender_policy = rep % 2 ? GenderPolicy::kOpposite : GenderPolicy::kSame;
    SpeakerEmbedding src;
    src.speaker_id = "src" + std::to_string(rep);
    src.gender = (rep / 2) % 2 ? Gender::kMale : Gender::kFemale;
    src.vector.resize(16);
    for (double& x : src.vector) x = n(gen);

    const PseudoSpeaker p = DerivePseudoSpeaker(pool, src, cfg);
    const auto ranked = RankFurthest(
        FilterByGender(pool, src.gender, cfg.gender_policy), src.vector, cfg);
    const std::set<std::string> furthest(ranked.begin(), ranked.end());
    if (p.member_ids.size() != 100) o.Fail("wrong member count");
    const Gender want = cfg.gender_policy == GenderPolicy::kSame
                            ? src.gender
                            : OppositeGender(src.gender);
    for (const auto& id : p.member_ids) {
      if (!furthest.count(id)) o.Fail("member " + id + " outside furthest 200");
      if (id[0] != GenderCode(want)) o.Fail("gender policy violated by " + id);
    }
    if (!(DerivePseudoSpeaker(pool, src, cfg) == p)) o.Fail("not reproducible");
    if (!(DerivePseudoSpeaker(shuffled, src, cfg) == p)) {
      o.Fail("depends on pool order");
    }
  }
  if (o.pass) o.detail = "100 sources, pool 500, k_far 200, k_sel 100";
  return o;
}

Outcome PermStrategy() {
  const SpeakerPool pool = RandomPool(30, 8, 707);
  std::mt19937_64 gen(708);
  std::normal_distribution<double> n(0, 1);
  std::uniform_real_distribution<double> hz(80, 300);
  std::vector<SpeakerEmbedding> utts;
  std::vector<F0Contour> contours;
  for (int s = 0; s < 6; ++s) {
    std::vector<double> center(8);
    for (double& x : center) x = n(gen);
    for (int u = 0; u < 20; ++u) {
      SpeakerEmbedding e;
      e.speaker_id = "spk" + std::to_string(s);
      e.utterance_id = e.speaker_id + "-" + std::to_string(u);
      e.gender = s % 2 ? Gender::kMale : Gender::kFemale;
      e.vector = center;
      for (double& x : e.vector) x += 0.2 * n(gen);
      utts.push_back(e);
      F0Contour c{*e.utterance_id, {}, 10.0};
      for (int f = 0; f < 50; ++f) c.values.push_back(f % 7 ? hz(gen) : 0.0);
      contours.push_back(std::move(c));
    }
  }
  SelectionConfig sel;
  sel.k_far = 10;
  sel.k_sel = 5;
  sel.global_seed = 9;
  const AnonymizationResult r =
      AnonymizeBatch(pool, utts, contours, sel, F0Mode::kModified);
  Outcome o;
  if (r.pseudo.size() != 6) o.Fail(Fmt("%zu pseudo-speakers", r.pseudo.size()));
  for (std::size_t i = 0; i < contours.size() && o.pass; ++i) {
    const std::string& spk = utts[i].speaker_id;
    const auto it =
        std::find_if(r.pseudo.begin(), r.pseudo.end(),
                     [&](auto& p) { return p.source_speaker_id == spk; });
    if (it == r.pseudo.end()) {
      o.Fail("no pseudo-speaker for " + spk);
      break;
    }
    const LogF0Stats got = ComputeLogF0Stats(r.contours[i]);
    if (std::abs(got.mean - it->f0_stats.mean) > 1e-9 ||
        std::abs(got.std - it->f0_stats.std) > 1e-9) {
      o.Fail("utterance " + contours[i].utterance_id +
             " not mapped to its speaker's target");
    }
  }
  std::set<std::string> seen;
  for (const auto& p : r.pseudo) {
    if (!seen.insert(p.source_speaker_id).second) o.Fail("duplicate speaker");
  }
  if (o.pass) o.detail = "6 speakers x 20 utterances, one target each";
  return o;
}

Outcome SimulationOrdering() {
  const auto start = Clock::now();
  Outcome o;
  std::string detail;
  for (GenderPolicy policy : {GenderPolicy::kSame, GenderPolicy::kOpposite}) {
    int eer_wins = 0, cllr_wins = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      CohortSpec spec;
      spec.n_speakers_per_gender = 20;
      spec.utts_per_speaker = 5;
      spec.embed_dim = 32;
      spec.seed = seed;
      const Cohort cohort = GenerateCohort(spec);
      ScenarioConfig cfg;
      cfg.attack = AttackKind::kAnonymizedToAnonymized;
      cfg.attacker = AttackerKind::kEmbeddingPlusF0;
      cfg.gender_policy = policy;
      cfg.f0_mode = F0Mode::kOriginal;
      const auto orig = RunScenario(cohort, cfg, SimulationSelection()).report;
      cfg.f0_mode = F0Mode::kModified;
      const auto mod = RunScenario(cohort, cfg, SimulationSelection()).report;
      eer_wins += mod.eer > orig.eer;
      cllr_wins += mod.min_cllr > orig.min_cllr;
    }
    const char* name = policy == GenderPolicy::kSame ? "same" : "opposite";
    detail += Fmt("%s: EER %d/5 min_cllr %d/5; ", name, eer_wins, cllr_wins);
    if (eer_wins < 4 || cllr_wins < 4) o.Fail("");
  }
  const double secs = Seconds(start);
  if (secs >= 120) o.Fail("");
  o.detail = detail + Fmt("%.2f s", secs);
  return o;
}

Outcome ScenarioSanity() {
  Outcome o;
  int oa_wins = 0;
  double worst_equal = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CohortSpec spec;
    spec.seed = seed;
    const Cohort cohort = GenerateCohort(spec);
    ScenarioConfig cfg;
    cfg.attacker = AttackerKind::kEmbeddingOnly;
    cfg.attack = AttackKind::kOriginalToAnonymized;
    const double oa =
        RunScenario(cohort, cfg, SimulationSelection()).report.eer;
    ScenarioHarness plain;
    plain.anonymize = false;
    const double base =
        RunScenario(cohort, cfg, SimulationSelection(), plain).report.eer;
    oa_wins += oa > base;

    ScenarioHarness forced;
    forced.check_seeds = false;
    cfg.attack = AttackKind::kAnonymizedToAnonymized;
    cfg.enroll_seed = cfg.trial_seed = seed;
    for (AttackerKind a :
         {AttackerKind::kEmbeddingOnly, AttackerKind::kEmbeddingPlusF0}) {
      for (F0Mode f : {F0Mode::kOriginal, F0Mode::kModified}) {
        cfg.attacker = a;
        cfg.f0_mode = f;
        worst_equal = std::max(
            worst_equal,
            RunScenario(cohort, cfg, SimulationSelection(), forced).report.eer);
      }
    }
  }
  if (oa_wins < 5) o.Fail("");
  if (worst_equal >= 0.05) o.Fail("");
  o.detail = Fmt("o-a above baseline %d/5, equal-seed a-a max EER %.2f%%",
                 oa_wins, 100 * worst_equal);
  return o;
}

Outcome RoundTripAndFuzz() {
  Outcome o;
  int formats = 0, rejected = 0, accepted = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    for (const auto& fc : corpus::GenerateCorpus(seed)) {
      ++formats;
      if (!fc.typed_round_trip) o.Fail(fc.name + " typed round trip");
      if (fc.reserialize(fc.text) != fc.text)
        o.Fail(fc.name + " not byte-exact");
      const auto r = corpus::Fuzz(fc, 1000, seed * 7919);
      if (r.corrupted > 0) o.Fail(fc.name + ": " + r.first_problem);
      rejected += r.rejected;
      accepted += r.accepted;
    }
  }
  if (o.pass) {
    o.detail =
        Fmt("%d corpora, 1000 mutants each: %d rejected, %d parsed "
            "faithfully, 0 corrupted",
            formats, rejected, accepted);
  }
  return o;
}

std::string Slurp(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) {
    all += f.filename().string() + "\n" + ReadFile(f.string());
  }
  return all;
}

Outcome ThreadDeterminism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "vpriv_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto run = [&](const std::string& args) {
    const std::string cmd = std::string(VPRIV_CLI) + " " + args + " >/dev/null";
    if (std::system(cmd.c_str()) != 0) o.Fail("command failed: " + args);
  };
  std::string sim_ref, anon_ref;
  for (int threads : {1, 4, 8}) {
    const std::string t = std::to_string(threads);
    const fs::path sim = dir / ("sim" + t), anon = dir / ("anon" + t);
    run("--threads " + t + " simulate --attack a-a --f0 modified --out-dir " +
        sim.string());
    run("--threads " + t + " anonymize --pool-file " +
        (sim / "pool.txt").string() + " --plda-file " +
        (sim / "plda.txt").string() + " --embeddings-file " +
        (sim / "user_embeddings.txt").string() + " --contours-file " +
        (sim / "user_contours.txt").string() +
        " --k-far 20 --k-sel 10 --f0 modified --out-dir " + anon.string());
    if (!o.pass) break;
    const std::string s = Slurp(sim), a = Slurp(anon);
    if (threads == 1) {
      sim_ref = s;
      anon_ref = a;
    } else {
      if (s != sim_ref) o.Fail("simulate differs at " + t + " threads");
      if (a != anon_ref) o.Fail("anonymize differs at " + t + " threads");
    }
  }
  fs::remove_all(dir);
  if (o.pass) o.detail = "simulate and anonymize identical for 1, 4, 8 threads";
  return o;
}

struct Criterion {
  const char* name;
  Outcome (*check)();
};

int Main() {
  const Criterion criteria[] = {
      {"F0 stat-matching", StatMatching},
      {"F0 closed-form example", ClosedFormF0},
      {"PLDA oracle equivalence", PldaOracle},
      {"metrics oracle equivalence", MetricsOracle},
      {"calibration fixed points", CalibrationFixedPoints},
      {"selection contract", SelectionContract},
      {"one pseudo-speaker per speaker", PermStrategy},
      {"simulation ordering", SimulationOrdering},
      {"scenario sanity", ScenarioSanity},
      {"round-trip and fuzzing", RoundTripAndFuzz},
      {"determinism under parallelism", ThreadDeterminism},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.Fail(std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace vpriv

int main() { return vpriv::Main(); }
