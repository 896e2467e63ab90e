#include "chlab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include "chlab/csv.hpp"

namespace chlab {

namespace fs = std::filesystem;

namespace {

void require_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  const fs::path probe = dir / ".chlab-write-probe";
  {
    std::ofstream out(probe);
    if (!out || !(out << "probe")) throw Error("output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

class OutputDir {
 public:
  explicit OutputDir(fs::path root) : root_(std::move(root)) {}

  template <class Writer>
  void write(const std::string& rel, Writer&& writer) {
    const fs::path p = root_ / rel;
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot open " + p.string() + " for writing");
    writer(out);
    if (!out) throw Error("failed writing " + p.string());
    files_.push_back(rel);
  }

  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path root_;
  std::vector<std::string> files_;
};

std::string number_tag(double v) {
  std::string s = format_double(v);
  for (char& c : s) {
    if (c == '-') c = 'm';
  }
  return s;
}

void write_plots(const ExperimentReport& rep, OutputDir& out) {
  // One two-column (lambda, value) file per quantity and time.
  std::map<std::string, std::vector<std::pair<double, double>>> curves;
  for (const auto& r : rep.rows) {
    if (!(r.lambda > 0.0)) continue;
    curves[rep.id + "_" + r.quantity + "_t" + number_tag(r.t)].emplace_back(r.lambda, r.measured);
  }
  for (const auto& [name, pts] : curves) {
    if (pts.size() < 2) continue;
    out.write("plots/" + name + ".dat", [&](std::ostream& os) {
      os << "# lambda " << name << '\n';
      for (const auto& [x, y] : pts) os << format_double(x) << ' ' << format_double(y) << '\n';
    });
  }
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void write_summary_csv(const std::vector<Verdict>& verdicts, std::ostream& os) {
  os << "verdict_id,measured,threshold,comparator,pass\n";
  for (const auto& v : verdicts) {
    os << csv_row({v.id, format_double(v.measured), format_double(v.threshold), v.comparator,
                   v.pass ? "pass" : "fail"})
       << '\n';
  }
}

RunResult run(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const fs::path root(cfg.output_dir);
  require_writable(root);

  RunResult result;
  OutputDir out(root);
  LadderRun ladder(cfg.ladder, cfg.solver, effective_workers(cfg));
  const std::set<std::string> selected(cfg.experiments.begin(), cfg.experiments.end());

  try {
    for (const auto& id : selected) {
      log << "[chlab] running " << id << std::endl;
      ExperimentReport rep;
      if (id == "e1") {
        rep = e1_norm_limit(cfg.ladder);
      } else if (id == "e2") {
        rep = e2_residual_decay(ladder);
      } else if (id == "e3") {
        rep = e3_actual_vs_approx(ladder);
      } else if (id == "e4") {
        rep = e4_interpolated_hs_decay(ladder);
      } else if (id == "e5") {
        rep = e5_nonuniform_dependence(ladder);
      }
      out.write(id + ".csv", [&](std::ostream& os) { write_report_csv(rep, os); });
      if (!rep.residuals.empty()) {
        out.write("residuals.csv", [&](std::ostream& os) {
          write_residual_csv_header(os);
          for (const auto& r : rep.residuals) write_residual_csv_row(r, os);
        });
      }
      write_plots(rep, out);
      for (const auto& v : rep.verdicts) {
        log << "[chlab]   " << v.id << " " << format_double(v.measured) << ' ' << v.comparator << ' '
            << format_double(v.threshold) << ' ' << (v.pass ? "pass" : "FAIL") << std::endl;
      }
      result.verdicts.insert(result.verdicts.end(), rep.verdicts.begin(), rep.verdicts.end());
      result.reports.push_back(std::move(rep));
    }

    if (selected.count("e2") || selected.count("e3") || selected.count("e4") || selected.count("e5")) {
      const bool with_actual = selected.count("e3") || selected.count("e4") || selected.count("e5");
      for (double lam : cfg.ladder.lambdas) {
        const auto& c = ladder.cell(lam, with_actual);
        auto dump = [&](const std::string& kind, double w, const Trajectory& tr) {
          out.write("trajectories/" + kind + "_lambda" + number_tag(lam) + "_omega" + number_tag(w) + ".csv",
                    [&](std::ostream& os) { write_trajectory_csv(tr, os); });
        };
        dump("low", c.approx_plus->params().omega, c.approx_plus->low_trajectory());
        dump("low", c.approx_minus->params().omega, c.approx_minus->low_trajectory());
        if (with_actual) {
          dump("actual", c.approx_plus->params().omega, c.actual_plus);
          dump("actual", c.approx_minus->params().omega, c.actual_minus);
        }
      }
    }
    result.complete = true;
  } catch (const Error& e) {
    result.error = e.what();
    log << "[chlab] aborted: " << e.what() << std::endl;
  }

  out.write("summary.csv", [&](std::ostream& os) { write_summary_csv(result.verdicts, os); });
  result.files = out.files();
  {
    std::ofstream manifest(root / "MANIFEST", std::ios::binary);
    manifest << "created " << timestamp() << '\n';
    manifest << "status " << (result.complete ? "complete" : "incomplete") << '\n';
    if (!result.error.empty()) manifest << "error " << result.error << '\n';
    for (const auto& f : result.files) manifest << "file " << f << '\n';
  }
  result.files.push_back("MANIFEST");

  const bool all_pass =
      std::all_of(result.verdicts.begin(), result.verdicts.end(), [](const Verdict& v) { return v.pass; });
  result.exit_status = (result.complete && all_pass) ? 0 : 1;
  return result;
}

}  // namespace chlab
