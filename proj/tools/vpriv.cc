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

// vpriv: pseudo-speaker anonymization, scoring and linkability evaluation.
//
//   vpriv stats <contours> <out-stats>
//   vpriv anonymize --pool-file P --embeddings-file E --contours-file C
//                   --out-dir D [--plda-file M] [--gender same|opposite]
//                   [--f0 original|modified] [--k-far 200] [--k-sel 100]
//   vpriv score --plda-file M --enroll-file E --trial-embeddings T
//               --trial-key K --score-file OUT
//   vpriv eval --score-file S --trial-key K [--report-file R] [--det-out D]
//   vpriv simulate --out-dir D [scenario flags]
//
// Global flags: --config FILE, --seed N, --threads N, --det-out FILE.
// Config-file keys and flags share names (underscores become dashes);
// flags override the config file.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "vpriv/attack_sim.h"
#include "vpriv/error.h"
#include "vpriv/io_formats.h"
#include "vpriv/metrics.h"
#include "vpriv/pipeline.h"
#include "vpriv/run_config.h"

namespace {

using namespace vpriv;

constexpr const char* kToolVersion = "1.0.0";

// Flags that override config-file values when present.
struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> global_seed;
  std::optional<std::size_t> threads;
  std::optional<std::string> det_out;

  std::optional<std::string> pool_file, embeddings_file, contours_file,
      plda_file, enroll_file, trial_embeddings, trial_key, score_file,
      out_stats_file, report_file, out_dir;

  std::optional<std::size_t> k_far, k_sel;
  std::optional<std::string> gender_policy, f0_mode, scorer, length_norm;
  std::optional<std::string> attack, attacker;
  std::optional<std::uint64_t> enroll_seed, trial_seed;
  std::optional<double> f0_weight;

  std::optional<std::size_t> n_speakers_per_gender, utts_per_speaker, embed_dim,
      frames_per_utt, pool_speakers_per_gender;
  std::optional<double> between_var, within_var, f0_between_std, f0_within_std;
};

template <typename T>
void Override(const std::optional<T>& flag, T* field) {
  if (flag) *field = *flag;
}

RunConfig BuildConfig(const Flags& f, RunConfig base, bool seed_is_cohort) {
  RunConfig c = base;
  if (!f.config.empty()) c = ParseRunConfig(ReadFile(f.config), c);
  if (f.seed) {
    if (seed_is_cohort) {
      c.cohort.seed = *f.seed;
    } else {
      c.selection.global_seed = *f.seed;
    }
  }
  Override(f.global_seed, &c.selection.global_seed);
  Override(f.threads, &c.threads);
  Override(f.det_out, &c.det_out);
  Override(f.pool_file, &c.pool_file);
  Override(f.embeddings_file, &c.embeddings_file);
  Override(f.contours_file, &c.contours_file);
  Override(f.plda_file, &c.plda_file);
  Override(f.enroll_file, &c.enroll_file);
  Override(f.trial_embeddings, &c.trial_embeddings);
  Override(f.trial_key, &c.trial_key);
  Override(f.score_file, &c.score_file);
  Override(f.out_stats_file, &c.out_stats_file);
  Override(f.report_file, &c.report_file);
  Override(f.out_dir, &c.out_dir);
  Override(f.k_far, &c.selection.k_far);
  Override(f.k_sel, &c.selection.k_sel);
  if (f.gender_policy) {
    c.selection.gender_policy = ParseGenderPolicy(*f.gender_policy);
    c.scenario.gender_policy = c.selection.gender_policy;
  }
  if (f.f0_mode) c.scenario.f0_mode = ParseF0Mode(*f.f0_mode);
  if (f.scorer) c.selection.scorer = ParseScorerKind(*f.scorer);
  if (f.length_norm) c.selection.length_norm = ParseBool(*f.length_norm);
  if (f.attack) c.scenario.attack = ParseAttackKind(*f.attack);
  if (f.attacker) c.scenario.attacker = ParseAttackerKind(*f.attacker);
  Override(f.enroll_seed, &c.scenario.enroll_seed);
  Override(f.trial_seed, &c.scenario.trial_seed);
  Override(f.f0_weight, &c.scenario.f0_weight);
  Override(f.n_speakers_per_gender, &c.cohort.n_speakers_per_gender);
  Override(f.utts_per_speaker, &c.cohort.utts_per_speaker);
  Override(f.embed_dim, &c.cohort.embed_dim);
  Override(f.frames_per_utt, &c.cohort.frames_per_utt);
  Override(f.pool_speakers_per_gender, &c.cohort.pool_speakers_per_gender);
  Override(f.between_var, &c.cohort.between_var);
  Override(f.within_var, &c.cohort.within_var);
  Override(f.f0_between_std, &c.cohort.f0_between_std);
  Override(f.f0_within_std, &c.cohort.f0_within_std);
  return c;
}

void Require(const std::string& value, const char* flag) {
  if (value.empty()) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string("missing required ") + flag);
  }
}

// Collects outputs and a manifest, then writes them all. Files already
// written are removed if a later write fails.
class OutputSet {
 public:
  explicit OutputSet(std::string command) {
    manifest_.push_back({"format_version", {std::string(kFormatVersion)}});
    manifest_.push_back({"tool", {"vpriv", kToolVersion}});
    manifest_.push_back({"command", {std::move(command)}});
  }

  void Setting(const std::string& key, std::vector<std::string> values) {
    manifest_.push_back({"setting." + key, std::move(values)});
  }

  void Input(const std::string& role, const std::string& contents) {
    manifest_.push_back({"input." + role, {Sha256Hex(contents)}});
  }

  void Add(const std::string& name, const std::string& path,
           std::string contents, std::size_t records) {
    const Manifest m = MakeManifest(records, contents);
    manifest_.push_back(
        {"output." + name, {std::to_string(m.record_count), m.checksum}});
    files_.emplace_back(path, std::move(contents));
  }

  void Commit(const std::string& manifest_path) {
    files_.emplace_back(manifest_path, SerializeKeyValues(manifest_));
    std::vector<std::string> written;
    try {
      for (const auto& [path, contents] : files_) {
        WriteFile(path, contents);
        written.push_back(path);
      }
    } catch (...) {
      std::error_code ec;
      for (const auto& p : written) std::filesystem::remove(p, ec);
      throw;
    }
  }

 private:
  std::vector<KeyValue> manifest_;
  std::vector<std::pair<std::string, std::string>> files_;
};

std::string InDir(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

void EnsureDir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "cannot create directory '" + dir + "'");
  }
}

int RunStats(const RunConfig& c) {
  Require(c.contours_file, "contours file");
  Require(c.out_stats_file, "output stats file");
  const std::string text = ReadFile(c.contours_file);
  const auto contours = ParseContours(text);
  std::vector<std::string> skipped;
  const auto stats = ContourStats(contours, &skipped);
  for (const auto& id : skipped) {
    std::cerr << "warning: utterance '" << id
              << "' has no voiced frames; skipped\n";
  }
  OutputSet out("stats");
  out.Input("contours_file", text);
  out.Add("stats", c.out_stats_file, SerializeStats(stats), stats.size());
  out.Commit(c.out_stats_file + ".manifest");
  return 0;
}

int RunAnonymize(const RunConfig& c) {
  Require(c.pool_file, "--pool-file");
  Require(c.embeddings_file, "--embeddings-file");
  Require(c.contours_file, "--contours-file");
  Require(c.out_dir, "--out-dir");
  c.selection.Validate();

  const std::string pool_text = ReadFile(c.pool_file);
  const std::string emb_text = ReadFile(c.embeddings_file);
  const std::string contour_text = ReadFile(c.contours_file);
  SpeakerPool pool = ParsePoolManifest(pool_text);
  std::string plda_text;
  if (!c.plda_file.empty()) {
    plda_text = ReadFile(c.plda_file);
    pool.plda = ParsePldaModel(plda_text);
  }
  pool.Validate();
  const auto embeddings = ParseEmbeddings(emb_text, pool.dim());
  const auto contours = ParseContours(contour_text);

  const auto result = AnonymizeBatch(pool, embeddings, contours, c.selection,
                                     c.scenario.f0_mode, c.threads);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

  std::vector<MappingRecord> mapping;
  std::vector<SpeakerEmbedding> xvectors;
  std::vector<NamedStats> stats;
  for (const auto& p : result.pseudo) {
    mapping.push_back(ToMappingRecord(p));
    xvectors.push_back(
        {p.source_speaker_id, std::nullopt, p.gender, p.xvector});
    stats.push_back({p.source_speaker_id, p.f0_stats});
  }

  EnsureDir(c.out_dir);
  OutputSet out("anonymize");
  out.Setting("k_far", {std::to_string(c.selection.k_far)});
  out.Setting("k_sel", {std::to_string(c.selection.k_sel)});
  out.Setting("gender_policy", {Name(c.selection.gender_policy)});
  out.Setting("f0_mode", {Name(c.scenario.f0_mode)});
  out.Setting("scorer", {Name(c.selection.scorer)});
  out.Setting("length_norm", {c.selection.length_norm ? "true" : "false"});
  out.Setting("global_seed", {std::to_string(c.selection.global_seed)});
  out.Input("pool_file", pool_text);
  out.Input("embeddings_file", emb_text);
  out.Input("contours_file", contour_text);
  if (!plda_text.empty()) out.Input("plda_file", plda_text);
  out.Add("mapping", InDir(c.out_dir, "mapping.txt"), SerializeMapping(mapping),
          mapping.size());
  out.Add("pseudo_xvectors", InDir(c.out_dir, "pseudo_xvectors.txt"),
          SerializeEmbeddings(xvectors), xvectors.size());
  out.Add("pseudo_f0_stats", InDir(c.out_dir, "pseudo_f0_stats.txt"),
          SerializeStats(stats), stats.size());
  out.Add("contours", InDir(c.out_dir, "contours.txt"),
          SerializeContours(result.contours), result.contours.size());
  out.Commit(InDir(c.out_dir, "manifest.txt"));
  return 0;
}

int RunScore(const RunConfig& c) {
  Require(c.enroll_file, "--enroll-file");
  Require(c.trial_embeddings, "--trial-embeddings");
  Require(c.trial_key, "--trial-key");
  Require(c.score_file, "--score-file");
  std::optional<PldaModel> plda;
  std::string plda_text;
  if (c.selection.scorer == ScorerKind::kPlda) {
    Require(c.plda_file, "--plda-file");
    plda_text = ReadFile(c.plda_file);
    plda = ParsePldaModel(plda_text);
    plda->Validate();
  }
  const std::string enroll_text = ReadFile(c.enroll_file);
  const std::string test_text = ReadFile(c.trial_embeddings);
  const std::string key_text = ReadFile(c.trial_key);
  std::optional<std::size_t> dim;
  if (plda) dim = plda->dim;
  const auto enroll = ParseEmbeddings(enroll_text, dim);
  const auto test = ParseEmbeddings(test_text, dim);
  const auto key = ParseTrialKey(key_text);

  const auto scores = ScoreTrials(plda, c.selection.scorer,
                                  PldaOptions{c.selection.length_norm}, enroll,
                                  test, key, c.threads);
  OutputSet out("score");
  out.Setting("scorer", {Name(c.selection.scorer)});
  out.Setting("length_norm", {c.selection.length_norm ? "true" : "false"});
  if (!plda_text.empty()) out.Input("plda_file", plda_text);
  out.Input("enroll_file", enroll_text);
  out.Input("trial_embeddings", test_text);
  out.Input("trial_key", key_text);
  out.Add("scores", c.score_file, SerializeScores(scores), scores.size());
  out.Commit(c.score_file + ".manifest");
  return 0;
}

int RunEval(const RunConfig& c) {
  Require(c.score_file, "--score-file");
  Require(c.trial_key, "--trial-key");
  const std::string score_text = ReadFile(c.score_file);
  const std::string key_text = ReadFile(c.trial_key);
  const auto set = JoinScores(ParseScores(score_text), ParseTrialKey(key_text));
  const std::string report = SerializeReport(ToReportRecord(Evaluate(set)));
  const std::string det =
      c.det_out.empty() ? std::string() : SerializeDet(DetPoints(set));

  if (c.report_file.empty()) {
    if (!c.det_out.empty()) WriteFile(c.det_out, det);
    std::cout << report;
    return 0;
  }
  OutputSet out("eval");
  out.Input("score_file", score_text);
  out.Input("trial_key", key_text);
  out.Add("report", c.report_file, report, 5);
  if (!c.det_out.empty()) {
    out.Add("det", c.det_out, det, DetPoints(set).size());
  }
  out.Commit(c.report_file + ".manifest");
  return 0;
}

int RunSimulate(const RunConfig& c) {
  Require(c.out_dir, "--out-dir");
  c.cohort.Validate();
  c.scenario.Validate();
  SelectionConfig sel = c.selection;
  sel.gender_policy = c.scenario.gender_policy;
  sel.Validate();

  const Cohort cohort = GenerateCohort(c.cohort);
  ScenarioHarness harness;
  harness.threads = c.threads;
  const ScenarioResult r = RunScenario(cohort, c.scenario, sel, harness);

  std::vector<SpeakerEmbedding> user_emb, anon_emb;
  std::vector<F0Contour> user_f0, anon_f0;
  for (const auto& u : cohort.users) {
    user_emb.push_back(u.embedding);
    user_f0.push_back(u.contour);
  }
  for (const auto& u : r.anonymized) {
    anon_emb.push_back(u.embedding);
    anon_f0.push_back(u.contour);
  }
  std::vector<ScoreRecord> scores;
  std::vector<TrialKeyRecord> key;
  for (const auto& t : r.trials) {
    scores.push_back({t.enroll_speaker_id, t.test_utterance_id, t.score});
    key.push_back({t.enroll_speaker_id, t.test_utterance_id, t.target});
  }
  std::vector<MappingRecord> trial_map, enroll_map;
  for (const auto& p : r.trial_pseudo) trial_map.push_back(ToMappingRecord(p));
  for (const auto& p : r.enroll_pseudo)
    enroll_map.push_back(ToMappingRecord(p));

  EnsureDir(c.out_dir);
  OutputSet out("simulate");
  for (auto& kv : SimulationKeyValues(c)) out.Setting(kv.key, kv.values);
  out.Setting("f0_weight_used", {FormatReal(r.f0_weight)});
  out.Add("pool", InDir(c.out_dir, "pool.txt"),
          SerializePoolManifest(cohort.pool), cohort.pool.speakers.size());
  out.Add("plda", InDir(c.out_dir, "plda.txt"), SerializePldaModel(cohort.plda),
          1);
  out.Add("user_embeddings", InDir(c.out_dir, "user_embeddings.txt"),
          SerializeEmbeddings(user_emb), user_emb.size());
  out.Add("user_contours", InDir(c.out_dir, "user_contours.txt"),
          SerializeContours(user_f0), user_f0.size());
  out.Add("anon_embeddings", InDir(c.out_dir, "anon_embeddings.txt"),
          SerializeEmbeddings(anon_emb), anon_emb.size());
  out.Add("anon_contours", InDir(c.out_dir, "anon_contours.txt"),
          SerializeContours(anon_f0), anon_f0.size());
  out.Add("trial_mapping", InDir(c.out_dir, "trial_mapping.txt"),
          SerializeMapping(trial_map), trial_map.size());
  if (!enroll_map.empty()) {
    out.Add("enroll_mapping", InDir(c.out_dir, "enroll_mapping.txt"),
            SerializeMapping(enroll_map), enroll_map.size());
  }
  out.Add("scores", InDir(c.out_dir, "scores.txt"), SerializeScores(scores),
          scores.size());
  out.Add("trials", InDir(c.out_dir, "trials.txt"), SerializeTrialKey(key),
          key.size());
  out.Add("report", InDir(c.out_dir, "report.txt"),
          SerializeReport(ToReportRecord(r.report)), 5);
  if (!c.det_out.empty()) {
    const auto det = DetPoints(r.scores);
    out.Add("det", c.det_out, SerializeDet(det), det.size());
  }
  out.Commit(InDir(c.out_dir, "manifest.txt"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-speaker anonymization and linkability evaluation"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;

  app.add_option("--config", f.config, "key/value config file")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", f.seed,
                 "global_seed for anonymize, cohort seed for simulate");
  app.add_option("--threads", f.threads, "worker threads");
  app.add_option("--det-out", f.det_out, "write DET points (Pfa Pmiss)");

  auto* stats = app.add_subcommand("stats", "per-utterance log-F0 statistics");
  stats->add_option("contours_file,--contours-file", f.contours_file);
  stats->add_option("out_stats_file,--out-stats-file", f.out_stats_file);

  auto* anon = app.add_subcommand("anonymize", "derive pseudo-speakers");
  anon->add_option("--pool-file", f.pool_file);
  anon->add_option("--plda-file", f.plda_file);
  anon->add_option("--embeddings-file", f.embeddings_file);
  anon->add_option("--contours-file", f.contours_file);
  anon->add_option("--out-dir", f.out_dir);
  anon->add_option("--global-seed", f.global_seed);
  anon->add_option("--k-far", f.k_far);
  anon->add_option("--k-sel", f.k_sel);
  anon->add_option("--gender,--gender-policy", f.gender_policy,
                   "same|opposite");
  anon->add_option("--f0,--f0-mode", f.f0_mode, "original|modified");
  anon->add_option("--scorer", f.scorer, "plda|cosine");
  anon->add_option("--length-norm", f.length_norm, "true|false");

  auto* score = app.add_subcommand("score", "score trials");
  score->add_option("--plda-file", f.plda_file);
  score->add_option("--enroll-file", f.enroll_file);
  score->add_option("--trial-embeddings", f.trial_embeddings);
  score->add_option("--trial-key", f.trial_key);
  score->add_option("--score-file,--out", f.score_file);
  score->add_option("--scorer", f.scorer, "plda|cosine");
  score->add_option("--length-norm", f.length_norm, "true|false");

  auto* eval = app.add_subcommand("eval", "EER, Cllr and min-Cllr");
  eval->add_option("--score-file", f.score_file);
  eval->add_option("--trial-key", f.trial_key);
  eval->add_option("--report-file,--out", f.report_file);

  auto* sim = app.add_subcommand("simulate", "attack-scenario simulation");
  sim->add_option("--out-dir", f.out_dir);
  sim->add_option("--attack", f.attack, "o-a|a-a");
  sim->add_option("--attacker", f.attacker, "EmbeddingOnly|EmbeddingPlusF0");
  sim->add_option("--f0,--f0-mode", f.f0_mode, "original|modified");
  sim->add_option("--gender,--gender-policy", f.gender_policy, "same|opposite");
  sim->add_option("--enroll-seed", f.enroll_seed);
  sim->add_option("--trial-seed", f.trial_seed);
  sim->add_option("--f0-weight", f.f0_weight);
  sim->add_option("--k-far", f.k_far);
  sim->add_option("--k-sel", f.k_sel);
  sim->add_option("--scorer", f.scorer, "plda|cosine");
  sim->add_option("--length-norm", f.length_norm, "true|false");
  sim->add_option("--n-speakers-per-gender", f.n_speakers_per_gender);
  sim->add_option("--utts-per-speaker", f.utts_per_speaker);
  sim->add_option("--embed-dim", f.embed_dim);
  sim->add_option("--between-var", f.between_var);
  sim->add_option("--within-var", f.within_var);
  sim->add_option("--f0-between-std", f.f0_between_std);
  sim->add_option("--f0-within-std", f.f0_within_std);
  sim->add_option("--frames-per-utt", f.frames_per_utt);
  sim->add_option("--pool-speakers-per-gender", f.pool_speakers_per_gender);

  CLI11_PARSE(app, argc, argv);

  try {
    if (stats->parsed()) return RunStats(BuildConfig(f, {}, false));
    if (anon->parsed()) return RunAnonymize(BuildConfig(f, {}, false));
    if (score->parsed()) return RunScore(BuildConfig(f, {}, false));
    if (eval->parsed()) return RunEval(BuildConfig(f, {}, false));
    RunConfig base;
    base.selection = SimulationSelection();
    return RunSimulate(BuildConfig(f, base, true));
  } catch (const std::exception& e) {
    std::cerr << "vpriv: " << e.what() << '\n';
    return 1;
  }
}
