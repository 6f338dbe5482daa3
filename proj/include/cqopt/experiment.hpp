#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "cqopt/linalg.hpp"

namespace cqopt {

enum class TableFormat { Csv, Markdown };

struct ExperimentConfig {
    std::vector<std::size_t> nList{2, 3, 4, 5, 6, 7};
    /// Strictly increasing trial counts; each run checkpoints its running max here.
    std::vector<std::size_t> trialSchedule{1, 5, 10, 20, 50, 100, 500, 1000, 10000};
    std::size_t runs = 20;
    std::uint64_t seed = 42;
    std::string outputPath;
    TableFormat format = TableFormat::Csv;
    /// Suppresses the timestamp comment line.
    bool deterministic = false;
    unsigned threads = 0;
};

/// Throws PreconditionError on an empty or non-increasing schedule, runs == 0,
/// or any n < 1.
void validate(const ExperimentConfig& config);

/// Real all-ones n x n x n tensor; 2 sqrt(n^3) bounds max Re F over spheres.
CQTensor onesInstance(std::size_t n);
double onesUpperBound(std::size_t n);

/// Seed of run r at dimension n.
std::uint64_t runSeed(std::uint64_t seed, std::size_t n, std::size_t run);

struct ExperimentRow {
    std::size_t n = 0;
    std::size_t trials = 0;
    std::size_t run = 0;
    double objective = 0.0;
    double upperBound = 0.0;
    double ratio = 0.0;
};

struct ExperimentSummary {
    std::size_t n = 0;
    std::size_t trials = 0;
    double average = 0.0;
    double worst = 0.0;
};

struct ExperimentResult {
    ExperimentConfig config;
    /// Ordered by n, then run, then trial count.
    std::vector<ExperimentRow> rows;
    /// Ordered by n, then trial count.
    std::vector<ExperimentSummary> summary;

    const ExperimentSummary& at(std::size_t n, std::size_t trials) const;
};

/// One stream of max(schedule) trials per run; ratios against onesUpperBound.
ExperimentResult runExperiment(const ExperimentConfig& config);

/// Columns n,trials,run,objective,upper_bound,ratio.
void writeExperimentCsv(std::ostream& out, const ExperimentResult& result);
/// Average/worst ratio tables, two dimensions per table.
void writeExperimentMarkdown(std::ostream& out, const ExperimentResult& result);
/// Dispatches on config.format; prefixes a "# generated ..." line unless deterministic.
void writeExperiment(std::ostream& out, const ExperimentResult& result);

}  // namespace cqopt
