// Command-line front end: `sicle segment` writes multiscale label maps and
// optional border overlays; `sicle eval` sweeps a corpus and reports
// boundary recall / under-segmentation error.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sicle/imgio.hpp"
#include "sicle/metrics.hpp"
#include "sicle/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  int n0 = 3000;
  int nf = 100;
  int omega = 5;
  std::string sampling = "rnd";
  std::string cost = "root";
  std::string criterion = "minsc";
  bool no_object = false;
  bool disf = false;
  std::uint64_t rng_seed = 0;
  std::vector<int> scales;
  std::string out_dir = ".";
};

void add_common_flags(CLI::App* app, CommonOpts& o) {
  app->add_option("--n0", o.n0, "Initial number of seeds");
  app->add_option("--nf", o.nf, "Desired number of superpixels");
  app->add_option("--omega", o.omega, "Maximum number of iterations");
  app->add_option("--sampling", o.sampling, "Seed sampling strategy")
      ->check(CLI::IsMember({"grid", "rnd"}));
  app->add_option("--cost", o.cost, "Arc-cost function")->check(CLI::IsMember({"root", "dyn"}));
  app->add_option("--criterion", o.criterion, "Seed relevance criterion")
      ->check(CLI::IsMember({"size", "minc", "maxc", "minsc", "maxsc", "rnd"}));
  app->add_flag("--no-object", o.no_object, "Disable saliency modulation of the criterion");
  app->add_flag("--disf", o.disf, "Use the DISF-equivalent removal decay");
  app->add_option("--rng-seed", o.rng_seed, "Seed for the random generator");
  app->add_option("--scales", o.scales, "Extra superpixel counts to emit (decreasing)")
      ->delimiter(',');
  app->add_option("--out", o.out_dir, "Output directory");
}

sicle::SicleConfig make_config(const CommonOpts& o, int nf) {
  sicle::SicleConfig cfg;
  cfg.sampling.strategy =
      o.sampling == "grid" ? sicle::SamplingStrategy::Grid : sicle::SamplingStrategy::Random;
  cfg.sampling.n0 = o.n0;
  cfg.sampling.rng_seed = o.rng_seed;
  cfg.mode = o.cost == "dyn" ? sicle::ArcCostMode::Dyn : sicle::ArcCostMode::Root;
  if (o.criterion == "size") cfg.criterion.base = sicle::RelevanceBase::Size;
  else if (o.criterion == "minc") cfg.criterion.base = sicle::RelevanceBase::MinContrast;
  else if (o.criterion == "maxc") cfg.criterion.base = sicle::RelevanceBase::MaxContrast;
  else if (o.criterion == "maxsc") cfg.criterion.base = sicle::RelevanceBase::MaxSizeContrast;
  else if (o.criterion == "rnd") cfg.criterion.base = sicle::RelevanceBase::Random;
  else cfg.criterion.base = sicle::RelevanceBase::MinSizeContrast;
  cfg.criterion.object_modulated = !o.no_object;
  cfg.schedule = o.disf ? sicle::Schedule::disf(o.n0, nf) : sicle::Schedule::curve(o.n0, nf, o.omega);
  for (const int k : o.scales) cfg.emit_scales.insert(k);
  cfg.emit_scales.insert(nf);
  return cfg;
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

int run_segment(const std::vector<std::string>& inputs, const std::string& saliency_path,
                bool overlay, const CommonOpts& opts) {
  if (opts.scales.size() > 1)
    for (std::size_t i = 1; i < opts.scales.size(); ++i)
      if (opts.scales[i] >= opts.scales[i - 1]) {
        std::cerr << "config error: --scales must be strictly decreasing\n";
        return 1;
      }
  if (!saliency_path.empty() && inputs.size() > 1) {
    std::cerr << "config error: --saliency requires a single input image\n";
    return 1;
  }
  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);

  int failures = 0;
  for (const auto& input : inputs) {
    try {
      const sicle::Image image = sicle::load_image(input);
      sicle::SaliencyMap sal;
      const sicle::SaliencyMap* sal_ptr = nullptr;
      if (!saliency_path.empty()) {
        sal = sicle::load_saliency(saliency_path, image.width, image.height);
        sal_ptr = &sal;
      }
      const sicle::SicleConfig cfg = make_config(opts, opts.nf);

      const auto t0 = std::chrono::steady_clock::now();
      const sicle::SegmentationResult result = sicle::segment(image, sal_ptr, cfg);
      const auto t1 = std::chrono::steady_clock::now();
      const double seconds = std::chrono::duration<double>(t1 - t0).count();

      const std::string stem = stem_of(input);
      for (const auto& [k, map] : result.scales) {
        const fs::path out = fs::path(opts.out_dir) / (stem + "_" + std::to_string(k) + ".pgm");
        sicle::save_label_map(map, out.string());
        if (overlay) {
          const auto cyan = sicle::color::srgb_to_lab(0.0, 1.0, 1.0);
          const sicle::Image ov = sicle::render_overlay(image, map, cyan);
          const fs::path ov_out =
              fs::path(opts.out_dir) / (stem + "_" + std::to_string(k) + "_ov.ppm");
          sicle::save_image(ov, ov_out.string());
        }
      }
      std::cout << input << ": iterations " << result.iterations_run << ", seed counts";
      for (const int c : result.per_iteration_seed_counts) std::cout << ' ' << c;
      std::cout << ", segment time " << seconds << " s\n";
    } catch (const sicle::IoError& e) {
      std::cerr << "i/o error: " << e.what() << '\n';
      ++failures;
    } catch (const std::invalid_argument& e) {
      std::cerr << "config error: " << e.what() << '\n';
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}

struct EvalRow {
  std::string image;
  int nf = 0;
  double br = 0.0;
  double ue = 0.0;
  double seconds = 0.0;
};

int run_eval(const std::vector<std::string>& inputs, const std::string& gt_dir,
             const std::string& saliency_dir, const std::vector<int>& nf_list, int tolerance,
             int jobs, const std::string& report_path, const std::string& format,
             const CommonOpts& opts) {
  struct Task {
    std::string image_path, gt_path, saliency_path;
    int nf;
  };
  std::vector<Task> tasks;
  int unpaired = 0;
  for (const auto& input : inputs) {
    const std::string stem = stem_of(input);
    const fs::path gt = fs::path(gt_dir) / (stem + ".pgm");
    if (!fs::exists(gt)) {
      std::cerr << "unpaired input (no ground truth): " << input << '\n';
      ++unpaired;
      continue;
    }
    std::string sal;
    if (!saliency_dir.empty()) {
      const fs::path s = fs::path(saliency_dir) / (stem + ".pgm");
      if (fs::exists(s)) sal = s.string();
    }
    for (const int nf : nf_list) tasks.push_back({input, gt.string(), sal, nf});
  }
  if (tasks.empty()) {
    std::cerr << "error: empty corpus, nothing to evaluate\n";
    return 1;
  }

  std::vector<EvalRow> rows(tasks.size());
  std::vector<char> ok(tasks.size(), 0);
  std::atomic<std::size_t> cursor{0};
  std::mutex log_mutex;
  auto worker = [&]() {
    for (std::size_t i = cursor.fetch_add(1); i < tasks.size(); i = cursor.fetch_add(1)) {
      const Task& t = tasks[i];
      try {
        const sicle::Image image = sicle::load_image(t.image_path);
        sicle::SaliencyMap sal;
        const sicle::SaliencyMap* sal_ptr = nullptr;
        if (!t.saliency_path.empty()) {
          sal = sicle::load_saliency(t.saliency_path, image.width, image.height);
          sal_ptr = &sal;
        }
        const sicle::GroundTruth gt = sicle::load_ground_truth(t.gt_path);
        const sicle::SicleConfig cfg = make_config(opts, t.nf);
        const auto t0 = std::chrono::steady_clock::now();
        const sicle::SegmentationResult result = sicle::segment(image, sal_ptr, cfg);
        const auto t1 = std::chrono::steady_clock::now();
        const sicle::MetricsReport rep = sicle::evaluate(result.final, gt, tolerance);
        rows[i] = {stem_of(t.image_path), t.nf, rep.br, rep.ue,
                   std::chrono::duration<double>(t1 - t0).count()};
        ok[i] = 1;
      } catch (const std::exception& e) {
        std::scoped_lock lock(log_mutex);
        std::cerr << "error: " << t.image_path << " (nf " << t.nf << "): " << e.what() << '\n';
      }
    }
  };
  const int thread_count = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int i = 1; i < thread_count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(6);
  double sum_br = 0.0, sum_ue = 0.0, sum_sec = 0.0;
  int done = 0;
  if (format == "csv") out << "image,nf,br,ue,seconds\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!ok[i]) continue;
    const EvalRow& r = rows[i];
    if (format == "csv") {
      out << r.image << ',' << r.nf << ',' << r.br << ',' << r.ue << ',' << r.seconds << '\n';
    } else {
      out << "{\"image\":\"" << r.image << "\",\"nf\":" << r.nf << ",\"br\":" << r.br
          << ",\"ue\":" << r.ue << ",\"seconds\":" << r.seconds << "}\n";
    }
    sum_br += r.br;
    sum_ue += r.ue;
    sum_sec += r.seconds;
    ++done;
  }
  if (done > 0) {
    if (format == "csv") {
      out << "mean," << "" << ',' << sum_br / done << ',' << sum_ue / done << ','
          << sum_sec / done << '\n';
    } else {
      out << "{\"image\":\"mean\",\"br\":" << sum_br / done << ",\"ue\":" << sum_ue / done
          << ",\"seconds\":" << sum_sec / done << "}\n";
    }
  }
  if (report_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(report_path);
    f << out.str();
    if (!f) {
      std::cerr << "i/o error: cannot write report " << report_path << '\n';
      return 1;
    }
  }
  const bool all_ok = unpaired == 0 && done == static_cast<int>(tasks.size());
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SICLE superpixel segmentation"};
  app.require_subcommand(1);

  CommonOpts seg_opts;
  std::vector<std::string> seg_inputs;
  std::string saliency_path;
  bool overlay = false;
  CLI::App* seg = app.add_subcommand("segment", "Segment images into superpixels");
  seg->add_option("images", seg_inputs, "Input PGM/PPM images")->required();
  seg->add_option("--saliency", saliency_path, "Object saliency map (PGM)");
  seg->add_flag("--overlay", overlay, "Also write border overlays");
  add_common_flags(seg, seg_opts);

  CommonOpts eval_opts;
  std::vector<std::string> eval_inputs;
  std::string gt_dir, saliency_dir, report_path, format = "csv";
  std::vector<int> nf_list;
  int tolerance = 2, jobs = 1;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate BR/UE over a corpus");
  eval->add_option("images", eval_inputs, "Input PGM/PPM images")->required();
  eval->add_option("--gt", gt_dir, "Directory of ground-truth PGMs paired by stem")->required();
  eval->add_option("--saliency-dir", saliency_dir, "Directory of saliency PGMs paired by stem");
  eval->add_option("--nf-sweep", nf_list, "Superpixel counts to evaluate")->delimiter(',');
  eval->add_option("--tolerance", tolerance, "Boundary recall tolerance radius (pixels)");
  eval->add_option("--jobs", jobs, "Number of parallel workers");
  eval->add_option("--report", report_path, "Report file (default: stdout)");
  eval->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "jsonl"}));
  add_common_flags(eval, eval_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (seg->parsed()) return run_segment(seg_inputs, saliency_path, overlay, seg_opts);
    if (nf_list.empty()) nf_list.push_back(eval_opts.nf);
    return run_eval(eval_inputs, gt_dir, saliency_dir, nf_list, tolerance, jobs, report_path,
                    format, eval_opts);
  } catch (const sicle::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
