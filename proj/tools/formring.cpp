// formring: run a session file (or stdin) and print a JSON or text report.
//
// Exit codes: 0 all commands ran, 1 usage/parse error or a command rejected
// its input, 2 a guard tripped (instability, saturation cap, size limits).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "formring/report.hpp"

namespace {

std::optional<std::pair<int, int>> parse_window(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) return std::nullopt;
  try {
    std::size_t used = 0;
    int lo = std::stoi(s.substr(0, dots), &used);
    if (used != dots) return std::nullopt;
    std::string rest = s.substr(dots + 2);
    int hi = std::stoi(rest, &used);
    if (used != rest.size() || lo > hi) return std::nullopt;
    return std::pair(lo, hi);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Form rings, Koszul and local cohomology, and Buchsbaum descent checks"};
  std::string input = "-";
  std::optional<std::int64_t> characteristic;
  std::string window;
  std::optional<int> tmax, margin;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  bool timing = false;

  app.add_option("input", input, "session file, '-' for stdin");
  app.add_option("--char", characteristic, "characteristic when the input declares none");
  app.add_option("--window", window, "degree window LO..HI");
  app.add_option("--tmax", tmax, "largest Koszul power tried")->check(CLI::Range(2, 1000));
  app.add_option("--margin", margin, "consecutive isomorphic transitions required")->check(CLI::Range(1, 1000));
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", seed, "reserved; the computation is deterministic");
  app.add_flag("--timing", timing, "record wall-clock time per command");
  app.add_flag_callback("--version", [] {
    std::cout << "formring " << formring::kVersion << "\n";
    throw CLI::Success();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  formring::RunOptions opts;
  if (!window.empty()) {
    opts.window = parse_window(window);
    if (!opts.window) {
      std::cerr << "error: --window expects LO..HI with LO <= HI\n";
      return 1;
    }
  }
  opts.t_max = tmax;
  opts.margin = margin;
  opts.seed = seed;
  opts.timing = timing;

  std::string text;
  if (input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open " << input << "\n";
      return 1;
    }
    text.assign(std::istreambuf_iterator<char>(in), {});
  }

  formring::Session session;
  try {
    session = formring::parse_session(text, {characteristic});
  } catch (const formring::ParseError& e) {
    std::cerr << (input == "-" ? "<stdin>" : input) << ":" << e.what() << "\n";
    return 1;
  }

  try {
    auto report = formring::run_session(session, opts, characteristic);
    if (format == "json") {
      std::cout << formring::to_json(report).dump(2) << "\n";
    } else {
      std::cout << formring::to_text(report);
    }
    for (const auto& r : report.results)
      if (r.status != "ok" && r.data.contains("message"))
        std::cerr << r.command << ": " << r.data["message"].get<std::string>() << "\n";
    return report.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
