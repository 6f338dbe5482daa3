#include "cqopt/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <stdexcept>

#include "cqopt/errors.hpp"
#include "cqopt/forms.hpp"
#include "cqopt/sampling.hpp"
#include "cqopt/solvers.hpp"

namespace cqopt {

namespace {

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string timestampLine() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string("# generated ") + buf;
}

}  // namespace

void validate(const ExperimentConfig& config) {
    if (config.nList.empty()) throw PreconditionError("experiment: nList is empty");
    for (auto n : config.nList)
        if (n < 1) throw PreconditionError("experiment: dimensions must be >= 1");
    if (config.trialSchedule.empty()) throw PreconditionError("experiment: trial schedule is empty");
    if (config.trialSchedule.front() < 1) throw PreconditionError("experiment: trial counts must be >= 1");
    for (std::size_t i = 1; i < config.trialSchedule.size(); ++i)
        if (config.trialSchedule[i] <= config.trialSchedule[i - 1])
            throw PreconditionError("experiment: trial schedule must be strictly increasing");
    if (config.runs < 1) throw PreconditionError("experiment: runs must be >= 1");
}

CQTensor onesInstance(std::size_t n) {
    CQTensor t({n, n, n});
    for (std::size_t i = 0; i < t.size(); ++i) t.at(i) = CQuat(1.0);
    return t;
}

double onesUpperBound(std::size_t n) {
    const double nn = static_cast<double>(n);
    return 2.0 * std::sqrt(nn * nn * nn);
}

std::uint64_t runSeed(std::uint64_t seed, std::size_t n, std::size_t run) {
    return mixSeed(mixSeed(seed, n), run);
}

const ExperimentSummary& ExperimentResult::at(std::size_t n, std::size_t trials) const {
    for (const auto& s : summary)
        if (s.n == n && s.trials == trials) return s;
    throw std::out_of_range("experiment: no summary for n=" + std::to_string(n) + ", trials=" +
                            std::to_string(trials));
}

ExperimentResult runExperiment(const ExperimentConfig& config) {
    validate(config);
    ExperimentResult result;
    result.config = config;
    const auto& schedule = config.trialSchedule;

    for (std::size_t n : config.nList) {
        const MultilinearForm f(onesInstance(n));
        const double bound = onesUpperBound(n);
        std::vector<ExperimentSummary> sums(schedule.size());
        for (std::size_t c = 0; c < schedule.size(); ++c) {
            sums[c].n = n;
            sums[c].trials = schedule[c];
            sums[c].worst = std::numeric_limits<double>::infinity();
        }
        for (std::size_t run = 0; run < config.runs; ++run) {
            SolveOptions options;
            options.trials = schedule.back();
            options.seed = runSeed(config.seed, n, run);
            options.checkpoints = schedule;
            options.threads = config.threads;
            const SolveReport report = algorithm1(f, options);
            for (std::size_t c = 0; c < schedule.size(); ++c) {
                ExperimentRow row;
                row.n = n;
                row.trials = schedule[c];
                row.run = run + 1;
                row.objective = report.checkpointBest[c];
                row.upperBound = bound;
                row.ratio = row.objective / bound;
                sums[c].average += row.ratio;
                sums[c].worst = std::min(sums[c].worst, row.ratio);
                result.rows.push_back(row);
            }
        }
        for (auto& s : sums) {
            s.average /= static_cast<double>(config.runs);
            result.summary.push_back(s);
        }
    }
    return result;
}

void writeExperimentCsv(std::ostream& out, const ExperimentResult& result) {
    out << "n,trials,run,objective,upper_bound,ratio\n";
    for (const auto& r : result.rows) {
        out << r.n << ',' << r.trials << ',' << r.run << ',' << formatReal(r.objective) << ','
            << formatReal(r.upperBound) << ',' << formatReal(r.ratio) << '\n';
    }
}

void writeExperimentMarkdown(std::ostream& out, const ExperimentResult& result) {
    const auto& ns = result.config.nList;
    const auto& schedule = result.config.trialSchedule;
    for (std::size_t first = 0; first < ns.size(); first += 2) {
        const std::size_t last = std::min(ns.size(), first + 2);
        if (first > 0) out << '\n';
        out << "| Number of trials |";
        for (std::size_t k = first; k < last; ++k)
            out << " n=" << ns[k] << " average ratio | n=" << ns[k] << " worst ratio |";
        out << "\n|---:|";
        for (std::size_t k = first; k < last; ++k) out << "---:|---:|";
        out << '\n';
        for (std::size_t trials : schedule) {
            out << "| " << trials << " |";
            for (std::size_t k = first; k < last; ++k) {
                const auto& s = result.at(ns[k], trials);
                out << ' ' << fixed4(s.average) << " | " << fixed4(s.worst) << " |";
            }
            out << '\n';
        }
    }
}

void writeExperiment(std::ostream& out, const ExperimentResult& result) {
    if (!result.config.deterministic) out << timestampLine() << '\n';
    if (result.config.format == TableFormat::Markdown)
        writeExperimentMarkdown(out, result);
    else
        writeExperimentCsv(out, result);
}

}  // namespace cqopt
