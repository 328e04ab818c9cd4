/// Golden tests of the rdcheck command-line tool: exit codes, output shapes,
/// and byte-level reproducibility. Takes the tool path as argv[1].

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_path;
int failures = 0;

RunResult run(const std::string& args) {
  const std::string cmd = "\"" + cli_path + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    std::cerr << "cannot spawn: " << cmd << "\n";
    std::exit(1);
  }
  RunResult result;
  std::array<char, 4096> buffer;
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.out.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

void expect(bool ok, const std::string& label) {
  if (!ok) {
    ++failures;
    std::cerr << "FAILED: " << label << "\n";
  }
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-rdcheck>\n";
    return 1;
  }
  cli_path = argv[1];

  {
    const RunResult r = run("threshold --group sl3");
    expect(r.exit_code == 0, "threshold sl3 exit code");
    expect(r.out == "8\n", "threshold sl3 prints 8");
  }
  {
    const RunResult r = run("threshold --group sl5");
    expect(r.exit_code == 0 && r.out == "24\n", "threshold sl5 prints 24");
  }
  {
    const RunResult r = run("roots --group sl2");
    expect(r.exit_code == 0, "roots exit code");
    const nlohmann::json parsed = nlohmann::json::parse(r.out);
    expect(parsed.at("n").get<int>() == 2, "roots n");
    expect(parsed.at("r").get<int>() == 1, "roots count");
    expect(parsed.at("threshold").get<int>() == 3, "roots threshold");
  }
  {
    const RunResult r = run("polar --matrix \"[[1,0],[0,1]]\"");
    expect(r.exit_code == 0, "polar identity exit code");
    const nlohmann::json parsed = nlohmann::json::parse(r.out);
    expect(std::abs(parsed.at("H")[0].get<double>()) < 1e-14, "polar identity H[0]");
    expect(std::abs(parsed.at("H")[1].get<double>()) < 1e-14, "polar identity H[1]");
    expect(parsed.at("recon_error").get<double>() < 1e-12, "polar identity recon");
  }
  {
    const RunResult r = run("polar --matrix \"[[1,1],[0,1]]\"");
    expect(r.exit_code == 0, "polar shear exit code");
    const nlohmann::json parsed = nlohmann::json::parse(r.out);
    expect(parsed.at("H")[0].get<double>() > 0.0, "polar shear expands");
    expect(parsed.at("recon_error").get<double>() < 1e-9, "polar shear recon");
  }
  {
    expect(run("polar --matrix \"[[1,2]\"").exit_code == 2, "malformed matrix exits 2");
    expect(run("polar --matrix \"[[2,0],[0,2]]\"").exit_code == 2,
           "non-unimodular matrix exits 2");
    expect(run("nonsense").exit_code == 2, "unknown subcommand exits 2");
    expect(run("threshold --bogus 1").exit_code == 2, "unknown flag exits 2");
    expect(run("threshold --group sl1").exit_code == 2, "bad rank exits 2");
    expect(run("xi --group sl4 --t-max 1").exit_code == 2, "xi rejects sl4");
  }
  {
    const RunResult r = run("xi --group sl2 --t-max 2 --samples 4");
    expect(r.exit_code == 0, "xi exit code");
    const std::vector<std::string> lines = lines_of(r.out);
    expect(lines.size() == 6, "xi row count");
    expect(lines.at(0) == "t,xi,envelope_ratio", "xi header");
    double prev = 2.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      double t = 0.0, xi = 0.0, ratio = 0.0;
      expect(std::sscanf(lines[i].c_str(), "%lf,%lf,%lf", &t, &xi, &ratio) == 3,
             "xi row parses");
      expect(xi < prev, "xi decreasing");
      prev = xi;
    }
    const RunResult again = run("xi --group sl2 --t-max 2 --samples 4");
    expect(again.out == r.out, "xi reruns byte-identical");
  }
  {
    const RunResult r = run("rd-constant --group sl2 --d 4 --radius 10");
    expect(r.exit_code == 0, "rd-constant exit code");
    const nlohmann::json parsed = nlohmann::json::parse(r.out);
    expect(std::abs(parsed.at("estimate").get<double>() - 0.12421914171002754) < 1e-6,
           "rd-constant estimate");
    expect(parsed.at("divergent_tail").get<bool>() == false, "rd-constant tail flag");
    expect(parsed.at("tail_bound").is_number(), "rd-constant finite tail");
  }
  {
    const RunResult r = run("rd-constant --group sl2 --d 2 --radius 10");
    expect(r.exit_code == 3, "rd-constant below threshold exits 3");
    const nlohmann::json parsed = nlohmann::json::parse(r.out);
    expect(parsed.at("divergent_tail").get<bool>(), "divergent flag set");
    expect(parsed.at("tail_bound").is_string(), "tail printed as infinite");
  }
  {
    const RunResult r = run("divergence --group sl2 --d 2 --radii 10,20");
    expect(r.exit_code == 0, "divergence exit code");
    const std::vector<std::string> lines = lines_of(r.out);
    expect(lines.size() == 3, "divergence row count");
    expect(lines.at(0) == "radius,partial_integral", "divergence header");
  }
  {
    expect(run("verify --group sl2 --d 2 --trials 1").exit_code == 3,
           "verify below threshold exits 3");
  }
  {
    const std::string flags = "verify --group sl2 --d 4 --trials 2 --grid 64 --seed 9";
    const RunResult r = run(flags);
    expect(r.exit_code == 0, "verify exit code");
    const nlohmann::json parsed = nlohmann::json::parse(r.out);
    expect(parsed.at("pass").get<bool>(), "verify passes");
    expect(parsed.at("linearization").at("violations").get<long>() == 0,
           "verify linearization clean");
    const RunResult again = run(flags);
    expect(again.out == r.out, "verify reruns byte-identical");
  }
  {
    const std::string path = "cli_out_tmp.csv";
    std::remove(path.c_str());
    const RunResult r = run("xi --group sl2 --t-max 1 --samples 2 --out " + path);
    expect(r.exit_code == 0 && r.out.empty(), "xi --out writes no stdout");
    std::ifstream file(path);
    std::string header;
    expect(static_cast<bool>(std::getline(file, header)) &&
               header == "t,xi,envelope_ratio",
           "xi --out file content");
    std::remove(path.c_str());
  }

  if (failures) {
    std::cerr << failures << " cli checks failed\n";
    return 1;
  }
  std::cout << "all cli checks passed\n";
  return 0;
}
