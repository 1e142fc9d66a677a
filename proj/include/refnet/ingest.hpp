#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "refnet/graph.hpp"

namespace refnet {

/// One patient-by-study enrollment event. enrolled_at is seconds since the
/// Unix epoch, parsed from ISO-8601 at second precision.
struct EnrollmentRecord {
  std::string subject_id;
  std::string study_id;
  std::string intervention;
  std::int64_t enrolled_at = 0;
};

enum class InterventionCategory { Targeted, Immunotherapy, Other };

/// "T:" prefix -> Targeted, "I:" prefix -> Immunotherapy, anything else Other.
InterventionCategory classify_intervention(std::string_view label);

/// Strict `YYYY-MM-DDTHH:MM:SS` (optional trailing Z) to epoch seconds.
/// Throws TimestampError on anything else.
std::int64_t parse_timestamp(std::string_view text);
std::string format_timestamp(std::int64_t epoch_seconds);

/// CSV with header `subject_id,study_id,intervention,enrolled_at`. Fields are
/// whitespace-trimmed; duplicate (subject, study) rows are kept (dedup happens
/// during edge construction). Throws ParseError with the offending line
/// number, TimestampError for bad timestamps.
std::vector<EnrollmentRecord> parse_enrollments(std::string_view csv_text);

enum class PairingRule {
  Consecutive,  // one unit edge per consecutive enrollment pair in time order
  AllOrdered,   // one unit edge per ordered enrollment pair (earlier -> later)
};

/// Turn enrollments into directed unit referral edges: dedup to distinct
/// (subject, study) keeping the earliest enrollment, drop subjects with fewer
/// than two distinct studies, sort each subject's enrollments by
/// (enrolled_at, study_id) and emit intervention(k) -> intervention(k+1).
/// Consecutive same-intervention enrollments yield self-loops.
std::vector<LabeledEdge> build_referral_edges(const std::vector<EnrollmentRecord>& records,
                                              PairingRule rule = PairingRule::Consecutive);

struct CohortSummary {
  std::int64_t subjects = 0;
  std::int64_t studies = 0;
  std::int64_t multi_trial_subjects = 0;
  std::int64_t multi_trial_studies = 0;
  std::int64_t qualifying_enrollments = 0;
  std::int64_t distinct_interventions = 0;
};

/// Counts before and after the multi-trial filter used by
/// build_referral_edges. The filtered counts only consider subjects with two
/// or more distinct studies.
CohortSummary summarize_cohort(const std::vector<EnrollmentRecord>& records);

struct SynthIntervention {
  std::string label;
  double weight = 1.0;  // popularity; relative draw probability
  std::string group;    // optional affinity group; empty = none
};

/// Synthetic cohort generator config. repeat_bias is the probability that a
/// follow-up enrollment stays on the same intervention (self-loop pressure);
/// group_bias is the probability that it stays within the previous
/// intervention's affinity group. Both default to 0, reducing the model to
/// independent popularity-weighted draws.
struct SynthConfig {
  std::int64_t n_subjects = 0;
  std::int32_t max_enrollments_per_subject = 1;
  std::vector<SynthIntervention> interventions;
  double repeat_bias = 0.0;
  double group_bias = 0.0;
  std::int32_t studies_per_intervention = 3;
  std::int64_t start_time = 1546300800;  // 2019-01-01T00:00:00

  static SynthConfig from_json(std::string_view json_text);  // ConfigError on bad input
  void validate() const;
};

/// Deterministic for a fixed seed: enrollment counts are uniform in
/// [1, max_enrollments_per_subject], interventions are drawn by popularity
/// weight (subject to the biases above) and per-subject timestamps are
/// strictly increasing. Records come out grouped by subject in id order.
std::vector<EnrollmentRecord> generate_synthetic_enrollments(std::uint64_t seed,
                                                             const SynthConfig& config);

std::string write_enrollments_csv(const std::vector<EnrollmentRecord>& records);

}  // namespace refnet
