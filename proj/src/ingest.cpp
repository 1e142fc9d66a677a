#include "refnet/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include <json.hpp>

#include "csv.hpp"
#include "refnet/errors.hpp"

namespace refnet {

namespace {

// Civil-date <-> day-count conversions (proleptic Gregorian, epoch day 0 =
// 1970-01-01), after Howard Hinnant's chrono algorithms.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y += (m <= 2);
}

unsigned days_in_month(std::int64_t y, unsigned m) {
  static const unsigned lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && (y % 4 == 0 && (y % 100 != 0 || y % 400 == 0))) return 29;
  return lengths[m - 1];
}

unsigned parse_fixed(std::string_view text, std::size_t pos, std::size_t len,
                     std::string_view original) {
  unsigned value = 0;
  for (std::size_t i = 0; i < len; ++i) {
    char c = text[pos + i];
    if (c < '0' || c > '9') {
      throw TimestampError("bad timestamp: " + std::string(original));
    }
    value = value * 10 + static_cast<unsigned>(c - '0');
  }
  return value;
}

}  // namespace

InterventionCategory classify_intervention(std::string_view label) {
  if (label.starts_with("T:")) return InterventionCategory::Targeted;
  if (label.starts_with("I:")) return InterventionCategory::Immunotherapy;
  return InterventionCategory::Other;
}

std::int64_t parse_timestamp(std::string_view text) {
  std::string_view body = text;
  if (body.size() == 20 && body.back() == 'Z') body.remove_suffix(1);
  if (body.size() != 19 || body[4] != '-' || body[7] != '-' || body[10] != 'T' ||
      body[13] != ':' || body[16] != ':') {
    throw TimestampError("bad timestamp: " + std::string(text));
  }
  unsigned y = parse_fixed(body, 0, 4, text);
  unsigned mo = parse_fixed(body, 5, 2, text);
  unsigned da = parse_fixed(body, 8, 2, text);
  unsigned hh = parse_fixed(body, 11, 2, text);
  unsigned mi = parse_fixed(body, 14, 2, text);
  unsigned ss = parse_fixed(body, 17, 2, text);
  if (mo < 1 || mo > 12 || da < 1 || da > days_in_month(y, mo) || hh > 23 || mi > 59 ||
      ss > 59) {
    throw TimestampError("bad timestamp: " + std::string(text));
  }
  return days_from_civil(y, mo, da) * 86400 + hh * 3600 + mi * 60 + ss;
}

std::string format_timestamp(std::int64_t epoch_seconds) {
  std::int64_t days = epoch_seconds / 86400;
  std::int64_t rem = epoch_seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  std::int64_t y;
  unsigned mo, da;
  civil_from_days(days, y, mo, da);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02d:%02d:%02d", static_cast<long long>(y),
                mo, da, static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                static_cast<int>(rem % 60));
  return buf;
}

std::vector<EnrollmentRecord> parse_enrollments(std::string_view csv_text) {
  std::vector<csv::Row> rows = csv::parse(csv_text);
  if (rows.empty()) {
    throw ParseError("missing header `subject_id,study_id,intervention,enrolled_at`", 1);
  }
  const std::vector<std::string> expected = {"subject_id", "study_id", "intervention",
                                             "enrolled_at"};
  if (rows[0].fields != expected) {
    throw ParseError("expected header `subject_id,study_id,intervention,enrolled_at`",
                     rows[0].line);
  }
  std::vector<EnrollmentRecord> records;
  records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const csv::Row& row = rows[r];
    if (row.fields.size() != 4) {
      throw ParseError("expected 4 fields, got " + std::to_string(row.fields.size()),
                       row.line);
    }
    if (row.fields[0].empty() || row.fields[1].empty() || row.fields[2].empty()) {
      throw ParseError("empty field", row.line);
    }
    records.push_back(
        {row.fields[0], row.fields[1], row.fields[2], parse_timestamp(row.fields[3])});
  }
  return records;
}

namespace {

struct StudyVisit {
  std::int64_t enrolled_at;
  std::string study_id;
  std::string intervention;
};

// subject -> study -> earliest enrollment. Ordered maps make the result a
// function of the record multiset, independent of input row order.
using SubjectMap = std::map<std::string, std::map<std::string, StudyVisit>>;

SubjectMap dedup_by_subject(const std::vector<EnrollmentRecord>& records) {
  SubjectMap subjects;
  for (const EnrollmentRecord& rec : records) {
    auto& per_study = subjects[rec.subject_id];
    auto it = per_study.find(rec.study_id);
    if (it == per_study.end()) {
      per_study.emplace(rec.study_id, StudyVisit{rec.enrolled_at, rec.study_id, rec.intervention});
    } else if (rec.enrolled_at < it->second.enrolled_at ||
               (rec.enrolled_at == it->second.enrolled_at &&
                rec.intervention < it->second.intervention)) {
      it->second = {rec.enrolled_at, rec.study_id, rec.intervention};
    }
  }
  return subjects;
}

}  // namespace

std::vector<LabeledEdge> build_referral_edges(const std::vector<EnrollmentRecord>& records,
                                              PairingRule rule) {
  SubjectMap subjects = dedup_by_subject(records);
  std::vector<LabeledEdge> edges;
  std::vector<StudyVisit> path;
  for (const auto& [subject, per_study] : subjects) {
    if (per_study.size() < 2) continue;
    path.clear();
    for (const auto& [study, visit] : per_study) path.push_back(visit);
    std::sort(path.begin(), path.end(), [](const StudyVisit& a, const StudyVisit& b) {
      return std::tie(a.enrolled_at, a.study_id) < std::tie(b.enrolled_at, b.study_id);
    });
    if (rule == PairingRule::Consecutive) {
      for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        edges.push_back({path[k].intervention, path[k + 1].intervention, 1});
      }
    } else {
      for (std::size_t k = 0; k < path.size(); ++k) {
        for (std::size_t l = k + 1; l < path.size(); ++l) {
          edges.push_back({path[k].intervention, path[l].intervention, 1});
        }
      }
    }
  }
  return edges;
}

CohortSummary summarize_cohort(const std::vector<EnrollmentRecord>& records) {
  CohortSummary s;
  std::set<std::string> all_studies;
  for (const EnrollmentRecord& rec : records) all_studies.insert(rec.study_id);
  SubjectMap subjects = dedup_by_subject(records);
  s.subjects = static_cast<std::int64_t>(subjects.size());
  s.studies = static_cast<std::int64_t>(all_studies.size());
  std::set<std::string> multi_studies;
  std::set<std::string> interventions;
  for (const auto& [subject, per_study] : subjects) {
    if (per_study.size() < 2) continue;
    s.multi_trial_subjects += 1;
    s.qualifying_enrollments += static_cast<std::int64_t>(per_study.size());
    for (const auto& [study, visit] : per_study) {
      multi_studies.insert(study);
      interventions.insert(visit.intervention);
    }
  }
  s.multi_trial_studies = static_cast<std::int64_t>(multi_studies.size());
  s.distinct_interventions = static_cast<std::int64_t>(interventions.size());
  return s;
}

SynthConfig SynthConfig::from_json(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid synth config: ") + e.what());
  }
  SynthConfig cfg;
  try {
    cfg.n_subjects = j.at("n_subjects").get<std::int64_t>();
    cfg.max_enrollments_per_subject = j.at("max_enrollments_per_subject").get<std::int32_t>();
    for (const auto& item : j.at("interventions")) {
      SynthIntervention iv;
      iv.label = item.at("label").get<std::string>();
      iv.weight = item.value("weight", 1.0);
      iv.group = item.value("group", std::string());
      cfg.interventions.push_back(std::move(iv));
    }
    cfg.repeat_bias = j.value("repeat_bias", 0.0);
    cfg.group_bias = j.value("group_bias", 0.0);
    cfg.studies_per_intervention = j.value("studies_per_intervention", 3);
    if (j.contains("start_time")) {
      const auto& st = j.at("start_time");
      cfg.start_time = st.is_string() ? parse_timestamp(st.get<std::string>())
                                      : st.get<std::int64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid synth config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

void SynthConfig::validate() const {
  if (n_subjects < 1) throw ConfigError("n_subjects must be >= 1");
  if (max_enrollments_per_subject < 1) {
    throw ConfigError("max_enrollments_per_subject must be >= 1");
  }
  if (interventions.empty()) throw ConfigError("interventions must not be empty");
  std::set<std::string> seen;
  for (const SynthIntervention& iv : interventions) {
    if (iv.label.empty()) throw ConfigError("intervention label must not be empty");
    if (!seen.insert(iv.label).second) {
      throw ConfigError("duplicate intervention label: " + iv.label);
    }
    if (!(iv.weight > 0.0)) throw ConfigError("intervention weight must be > 0");
  }
  if (repeat_bias < 0.0 || repeat_bias > 1.0) throw ConfigError("repeat_bias must be in [0, 1]");
  if (group_bias < 0.0 || group_bias > 1.0) throw ConfigError("group_bias must be in [0, 1]");
  if (studies_per_intervention < 1) throw ConfigError("studies_per_intervention must be >= 1");
}

namespace {

// All randomness below is drawn straight from the engine's 64-bit output so
// generated cohorts are byte-identical across standard libraries.
double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

std::size_t draw_index(std::mt19937_64& rng, std::size_t bound) { return rng() % bound; }

std::size_t weighted_draw(std::mt19937_64& rng, const std::vector<double>& cumulative) {
  double u = uniform01(rng) * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) --it;
  return static_cast<std::size_t>(it - cumulative.begin());
}

std::string pad_number(std::int64_t value, int width) {
  std::string digits = std::to_string(value);
  if (static_cast<int>(digits.size()) < width) {
    digits.insert(0, width - digits.size(), '0');
  }
  return digits;
}

}  // namespace

std::vector<EnrollmentRecord> generate_synthetic_enrollments(std::uint64_t seed,
                                                             const SynthConfig& config) {
  config.validate();
  std::mt19937_64 rng(seed);

  const std::size_t n_iv = config.interventions.size();
  std::vector<double> cum(n_iv);
  double acc = 0.0;
  for (std::size_t i = 0; i < n_iv; ++i) {
    acc += config.interventions[i].weight;
    cum[i] = acc;
  }

  // Per-group cumulative weights over member indices, for the group_bias draw.
  std::map<std::string, std::vector<std::size_t>> group_members;
  for (std::size_t i = 0; i < n_iv; ++i) {
    const std::string& grp = config.interventions[i].group;
    if (!grp.empty()) group_members[grp].push_back(i);
  }
  std::map<std::string, std::vector<double>> group_cum;
  for (const auto& [grp, members] : group_members) {
    std::vector<double>& c = group_cum[grp];
    double sum = 0.0;
    for (std::size_t i : members) {
      sum += config.interventions[i].weight;
      c.push_back(sum);
    }
  }

  const int subject_width =
      std::max<int>(4, static_cast<int>(std::to_string(config.n_subjects).size()));
  const int study_width = std::max<int>(
      5, static_cast<int>(
             std::to_string(n_iv * static_cast<std::size_t>(config.studies_per_intervention))
                 .size()));

  std::vector<EnrollmentRecord> records;
  for (std::int64_t s = 0; s < config.n_subjects; ++s) {
    std::string subject_id = "SUBJ-" + pad_number(s + 1, subject_width);
    std::size_t count =
        1 + draw_index(rng, static_cast<std::size_t>(config.max_enrollments_per_subject));

    std::int64_t t = config.start_time;
    std::size_t prev_iv = n_iv;  // none yet
    std::int32_t prev_study = -1;
    for (std::size_t e = 0; e < count; ++e) {
      std::size_t iv;
      if (prev_iv == n_iv) {
        iv = weighted_draw(rng, cum);
      } else if (config.repeat_bias > 0.0 && uniform01(rng) < config.repeat_bias) {
        iv = prev_iv;
      } else {
        const std::string& grp = config.interventions[prev_iv].group;
        if (!grp.empty() && config.group_bias > 0.0 && uniform01(rng) < config.group_bias) {
          const std::vector<std::size_t>& members = group_members[grp];
          iv = members[weighted_draw(rng, group_cum[grp])];
        } else {
          iv = weighted_draw(rng, cum);
        }
      }

      std::int32_t study;
      const std::int32_t spi = config.studies_per_intervention;
      if (iv == prev_iv && spi > 1) {
        // Repeat enrollments pick a different study of the same intervention,
        // otherwise the (subject, study) dedup would swallow them.
        study = static_cast<std::int32_t>(
            (prev_study + 1 + draw_index(rng, static_cast<std::size_t>(spi - 1))) % spi);
      } else {
        study = static_cast<std::int32_t>(draw_index(rng, static_cast<std::size_t>(spi)));
      }

      t += 86400 * (1 + static_cast<std::int64_t>(draw_index(rng, 30)));
      std::int64_t study_number = static_cast<std::int64_t>(iv) * spi + study + 1;
      records.push_back({subject_id, "NCT" + pad_number(study_number, study_width),
                         config.interventions[iv].label, t});
      prev_iv = iv;
      prev_study = study;
    }
  }
  return records;
}

std::string write_enrollments_csv(const std::vector<EnrollmentRecord>& records) {
  std::string out = "subject_id,study_id,intervention,enrolled_at\n";
  for (const EnrollmentRecord& rec : records) {
    out += csv::escape(rec.subject_id);
    out += ',';
    out += csv::escape(rec.study_id);
    out += ',';
    out += csv::escape(rec.intervention);
    out += ',';
    out += format_timestamp(rec.enrolled_at);
    out += '\n';
  }
  return out;
}

}  // namespace refnet
