#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cqopt/errors.hpp"
#include "cqopt/experiment.hpp"
#include "cqopt/io.hpp"
#include "cqopt/prob_lab.hpp"
#include "cqopt/solvers.hpp"

using namespace cqopt;

namespace {

std::string renderVector(const CQVector& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += formatQuat(v[i]);
    }
    return s + "]";
}

/// Writes through fn to `path`, or to stdout when path is empty.
template <typename Fn>
void emit(const std::string& path, Fn&& fn) {
    if (path.empty()) {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    fn(out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

void printReport(std::ostream& out, const SolveReport& r, const char* prefix) {
    out << "objective " << formatReal(r.objective) << '\n';
    out << "trials " << r.trials << '\n';
    out << "best_trial " << r.bestTrialIndex << '\n';
    out << "seed " << r.seed << '\n';
    out << "degenerate " << (r.degenerate ? "true" : "false") << '\n';
    if (r.theoreticalRatio) out << "theoretical_ratio " << formatReal(*r.theoreticalRatio) << '\n';
    for (std::size_t k = 0; k < r.solution.size(); ++k)
        out << prefix << k + 1 << ' ' << renderVector(r.solution[k]) << '\n';
}

struct Common {
    std::size_t trials = 1000;
    std::uint64_t seed = 42;
    std::optional<double> gamma;
    unsigned threads = 0;
    std::string out;
};

void addCommon(CLI::App* cmd, Common& c) {
    cmd->add_option("--trials", c.trials, "Number of randomized trials")->capture_default_str();
    cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    cmd->add_option("--gamma", c.gamma, "Report the approximation ratio formula for this gamma");
    cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
    cmd->add_option("--out", c.out, "Output file (default stdout)");
}

SolveOptions toOptions(const Common& c) {
    SolveOptions o;
    o.trials = c.trials;
    o.seed = c.seed;
    o.gamma = c.gamma;
    o.threads = c.threads;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sphere-constrained optimization over commutative quaternions"};
    app.require_subcommand(1);

    Common solveF;
    std::string tensorPath;
    auto* cmdSolveF = app.add_subcommand("solve-f", "Maximize Re F(x1, ..., xd) over unit spheres");
    cmdSolveF->add_option("--tensor", tensorPath, "Tensor file (CQT1)")->required();
    addCommon(cmdSolveF, solveF);

    Common solveP;
    std::string polyPath;
    bool estimateMin = false;
    auto* cmdSolveP = app.add_subcommand("solve-p", "Maximize Re H(x) over the unit sphere");
    cmdSolveP->add_option("--poly", polyPath, "Polynomial file (CQP1)")->required();
    cmdSolveP->add_flag("--estimate-min", estimateMin, "Also report an estimate of min Re H");
    addCommon(cmdSolveP, solveP);

    Common rankOne;
    std::string rankPath;
    auto* cmdRankOne = app.add_subcommand("rank-one", "Best rank-one approximation of a tensor");
    cmdRankOne->add_option("--tensor", rankPath, "Tensor file (CQT1)")->required();
    addCommon(cmdRankOne, rankOne);

    ExperimentConfig exp;
    std::string expFormat = "csv";
    auto* cmdExp = app.add_subcommand("experiment", "Approximation ratios on the all-ones n x n x n instance");
    cmdExp->add_option("--n", exp.nList, "Dimensions, comma separated")->delimiter(',')->capture_default_str();
    cmdExp->add_option("--trial-schedule", exp.trialSchedule, "Increasing trial counts, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    cmdExp->add_option("--runs", exp.runs, "Independent runs per dimension")->capture_default_str();
    cmdExp->add_option("--seed", exp.seed, "Random seed")->capture_default_str();
    cmdExp->add_option("--out", exp.outputPath, "Output file (default stdout)");
    cmdExp->add_option("--format", expFormat, "csv or markdown")
        ->check(CLI::IsMember({"csv", "markdown"}))
        ->capture_default_str();
    cmdExp->add_flag("--deterministic", exp.deterministic, "Omit the timestamp line");
    cmdExp->add_option("--threads", exp.threads, "Worker threads (0 = all cores)")->capture_default_str();

    std::size_t probN = 5;
    double probGamma = 0.5;
    TailOptions probOpts;
    std::string probOut;
    auto* cmdProb = app.add_subcommand("prob-check", "Monte Carlo tail probability of Re(a^T xi)");
    cmdProb->add_option("--n", probN, "Dimension")->capture_default_str();
    cmdProb->add_option("--gamma", probGamma, "gamma > 0 with gamma ln n < n")->capture_default_str();
    cmdProb->add_option("--delta", probOpts.delta, "Improved-bound parameter");
    cmdProb->add_option("--samples", probOpts.samples, "Number of samples")->capture_default_str();
    cmdProb->add_option("--seed", probOpts.seed, "Random seed")->capture_default_str();
    cmdProb->add_option("--threads", probOpts.threads, "Worker threads (0 = all cores)")->capture_default_str();
    cmdProb->add_option("--out", probOut, "Output CSV (default stdout)");

    std::vector<double> chiT{1, 2, 3, 4, 5};
    std::vector<double> chiB{1, 1, 1, 1};
    std::size_t chiSamples = 1'000'000;
    std::uint64_t chiSeed = 42;
    auto* cmdChi = app.add_subcommand("chi-check", "Weighted chi-square upper tail check");
    cmdChi->add_option("--t", chiT, "Tail levels, comma separated")->delimiter(',')->capture_default_str();
    cmdChi->add_option("--b", chiB, "Nonnegative weights, comma separated")->delimiter(',')->capture_default_str();
    cmdChi->add_option("--samples", chiSamples, "Number of samples")->capture_default_str();
    cmdChi->add_option("--seed", chiSeed, "Random seed")->capture_default_str();

    std::size_t curveFirst = 2;
    std::size_t curveLast = 50;
    double curveGamma = 0.5;
    double curveDelta = 0.5;
    std::string curveOut;
    auto* cmdCurves = app.add_subcommand("bound-curves", "Tabulate both tail bound curves over n");
    cmdCurves->add_option("--n-first", curveFirst)->capture_default_str();
    cmdCurves->add_option("--n-last", curveLast)->capture_default_str();
    cmdCurves->add_option("--gamma", curveGamma)->capture_default_str();
    cmdCurves->add_option("--delta", curveDelta)->capture_default_str();
    cmdCurves->add_option("--out", curveOut, "Output CSV (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmdSolveF) {
            const MultilinearForm f(readTensorFile(tensorPath));
            const SolveReport r = algorithm1(f, toOptions(solveF));
            emit(solveF.out, [&](std::ostream& out) { printReport(out, r, "x"); });
        } else if (*cmdSolveP) {
            const PolyProblem p = readPolyFile(polyPath);
            const SolveReport r = algorithm2(p, toOptions(solveP));
            std::optional<double> minimum;
            if (estimateMin) minimum = estimateMinimum(p, toOptions(solveP));
            emit(solveP.out, [&](std::ostream& out) {
                printReport(out, r, "x");
                if (minimum) out << "estimated_min " << formatReal(*minimum) << '\n';
                out << "signs";
                for (int s : r.signs) out << ' ' << (s > 0 ? "+1" : "-1");
                out << '\n';
            });
        } else if (*cmdRankOne) {
            const RankOneResult r = bestRankOne(readTensorFile(rankPath), toOptions(rankOne));
            emit(rankOne.out, [&](std::ostream& out) {
                out << "lambda " << formatReal(r.lambda) << '\n';
                out << "residual " << formatReal(r.residual) << '\n';
                out << "direct_residual " << formatReal(r.directResidual) << '\n';
                out << "identity_holds " << (r.identityHolds ? "true" : "false") << '\n';
                out << "trials " << r.report.trials << '\n';
                out << "seed " << r.report.seed << '\n';
                for (std::size_t k = 0; k < r.factors.size(); ++k)
                    out << 'u' << k + 1 << ' ' << renderVector(r.factors[k]) << '\n';
            });
        } else if (*cmdExp) {
            exp.format = expFormat == "markdown" ? TableFormat::Markdown : TableFormat::Csv;
            validate(exp);
            const ExperimentResult result = runExperiment(exp);
            emit(exp.outputPath, [&](std::ostream& out) { writeExperiment(out, result); });
        } else if (*cmdProb) {
            const ProbeResult r = estimateTailProb(probN, probGamma, probOpts);
            emit(probOut, [&](std::ostream& out) { writeProbeCsv(out, std::span<const ProbeResult>(&r, 1)); });
        } else if (*cmdChi) {
            std::cout << "t,samples,empirical,bound,slack,passed\n";
            bool all = true;
            for (double t : chiT) {
                const ChiSquareTail c = checkChiSquareTail(t, chiB, chiSamples, chiSeed);
                all = all && c.passed;
                std::cout << formatReal(c.t) << ',' << c.samples << ',' << formatReal(c.empirical) << ','
                          << formatReal(c.bound) << ',' << formatReal(c.slack) << ','
                          << (c.passed ? "true" : "false") << '\n';
            }
            return all ? 0 : 3;
        } else if (*cmdCurves) {
            const auto points = boundCurves(curveFirst, curveLast, curveGamma, curveDelta);
            emit(curveOut, [&](std::ostream& out) {
                out << "n,exponent45,exponent_improved,bound45,bound_improved\n";
                for (const auto& p : points) {
                    out << p.n << ',' << formatReal(p.exponent45) << ',' << formatReal(p.exponentImproved) << ','
                        << formatReal(p.bound45) << ',' << formatReal(p.boundImproved) << '\n';
                }
            });
        }
    } catch (const ParseError& e) {
        const std::string& path = *cmdSolveP ? polyPath : (*cmdRankOne ? rankPath : tensorPath);
        std::cerr << "error: " << path << ": " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
