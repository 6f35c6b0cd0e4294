#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cctype>
#include <regex>
#include <string>
#include <vector>

namespace {

struct RunOutput {
  int exit_code;
  std::string stdout_text;
};

RunOutput run_cli(const std::string& args) {
  std::string cmd = std::string(CTXPHASE_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return RunOutput{WEXITSTATUS(status), out};
}

// All standalone numeric tokens in the text, reformatted at 15 significant
// digits. Digits embedded in identifiers (class1_frequency) don't count.
std::vector<std::string> numbers_at_15(const std::string& text) {
  static const std::regex number(R"(-?\d+\.?\d*(?:[eE][+-]?\d+)?)");
  std::vector<std::string> out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), number);
       it != std::sregex_iterator(); ++it) {
    auto pos = static_cast<std::size_t>(it->position());
    if (pos > 0) {
      char prev = text[pos - 1];
      if (std::isalnum(static_cast<unsigned char>(prev)) || prev == '_') continue;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", std::stod(it->str()));
    out.push_back(buf);
  }
  return out;
}

std::string strip_header(const std::string& text) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line{text.data() + pos, end - pos};
    if (line.empty() || line[0] != '#') {
      out.append(line);
      out.push_back('\n');
    }
    pos = end + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("lift prints the representative and the quotient check") {
  RunOutput r = run_cli("lift --kind psi+ --class 1 --frame x");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("(|0'>,|0'>) + (|1'>,|-1'>)") != std::string::npos);
  CHECK(r.stdout_text.find("quotient: PASS") != std::string::npos);

  RunOutput r2 = run_cli("lift --kind phi- --class 2 --frame z");
  CHECK(r2.exit_code == 0);
  CHECK(r2.stdout_text.find("(|0>,|0>) + (|1>,|-1>)") != std::string::npos);

  RunOutput y = run_cli("lift --kind psi- --class 1 --frame y");
  CHECK(y.exit_code == 0);
  CHECK(y.stdout_text.find("quotient: PASS") != std::string::npos);
  CHECK(y.stdout_text.find("collapsed(y)") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("lift --kind bad --class 1 --frame z").exit_code == 2);
  CHECK(run_cli("lift --kind psi+ --class 3 --frame z").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("ensemble --kind psi- --frame q --n 10 --seed 1").exit_code == 2);
  CHECK(run_cli("correlate --kind phi+").exit_code == 2);  // no angles, no sweep
}

TEST_CASE("correlate single point and sweep") {
  RunOutput r = run_cli("correlate --kind phi+ --alpha 0 --beta 22.5");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("0.707106781186548") != std::string::npos);

  RunOutput sweep = run_cli("correlate --kind psi+ --sweep 0:90:5");
  CHECK(sweep.exit_code == 0);
  // header comment + csv header + 19*19 rows
  int lines = 0;
  for (char c : sweep.stdout_text) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 2 + 19 * 19);
  // E_analytic stays within 1e-12 of E_oracle on every row
  std::string body = strip_header(sweep.stdout_text);
  std::size_t pos = body.find('\n') + 1;  // skip csv header
  while (pos < body.size()) {
    std::size_t end = body.find('\n', pos);
    if (end == std::string::npos) break;
    std::string line = body.substr(pos, end - pos);
    pos = end + 1;
    auto nums = numbers_at_15(line);
    REQUIRE(nums.size() == 6);
    CHECK(std::abs(std::stod(nums[2]) - std::stod(nums[3])) <= 1e-12);
  }
}

TEST_CASE("chsh at the optimal settings") {
  RunOutput r = run_cli("chsh --kind phi+ --angles 0,45,22.5,67.5");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("S=2.82842712474619") != std::string::npos);
}

TEST_CASE("ensemble is replayable from its printed seed") {
  RunOutput r1 = run_cli("ensemble --kind psi- --frame z --n 1000 --seed 7");
  CHECK(r1.exit_code == 0);
  CHECK(r1.stdout_text.find("# seed=7 version=") != std::string::npos);
  CHECK(r1.stdout_text.find("E=-1") != std::string::npos);
  RunOutput r2 = run_cli("ensemble --kind psi- --frame z --n 1000 --seed 7");
  CHECK(r1.stdout_text == r2.stdout_text);
}

TEST_CASE("csv and json-lines carry identical numeric content") {
  std::string base = "ensemble --kind psi+ --frame x --n 500 --seed 11 --emit-records";
  RunOutput csv = run_cli(base + " --format csv");
  RunOutput jsonl = run_cli(base + " --format json-lines");
  CHECK(csv.exit_code == 0);
  CHECK(jsonl.exit_code == 0);
  auto csv_nums = numbers_at_15(strip_header(csv.stdout_text));
  auto jsonl_nums = numbers_at_15(strip_header(jsonl.stdout_text));
  CHECK(csv_nums == jsonl_nums);
}

TEST_CASE("stations command reports exact matched-frame correlations") {
  RunOutput r = run_cli(
      "stations --kind psi+ --n 400 --policy-a x --policy-b x --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("setting xx: count=400 E=1") != std::string::npos);
  CHECK(r.stdout_text.find("route_between_stations: NONE (PASS)") != std::string::npos);

  // replayable from the printed seed
  RunOutput again = run_cli(
      "stations --kind psi+ --n 400 --policy-a x --policy-b x --seed 3");
  CHECK(r.stdout_text == again.stdout_text);

  // same numeric content in csv and json-lines
  std::string base =
      "stations --kind psi- --n 300 --policy-a random --policy-b random --seed 5 "
      "--emit-records";
  RunOutput csv = run_cli(base + " --format csv");
  RunOutput jsonl = run_cli(base + " --format json-lines");
  CHECK(numbers_at_15(strip_header(csv.stdout_text)) ==
        numbers_at_15(strip_header(jsonl.stdout_text)));
}

TEST_CASE("isolated sequence honors the device frame") {
  RunOutput match = run_cli(
      "isolated --kind psi+ --class 1 --frame z --device z --n 5 --seed 42");
  CHECK(match.exit_code == 0);
  CHECK(match.stdout_text.find("outcomes: +1 +1 +1 +1 +1") != std::string::npos);

  RunOutput repeat = run_cli(
      "isolated --kind psi+ --class 1 --frame z --device x --n 10 --seed 42");
  RunOutput repeat2 = run_cli(
      "isolated --kind psi+ --class 1 --frame z --device x --n 10 --seed 42");
  CHECK(repeat.stdout_text == repeat2.stdout_text);
}

TEST_CASE("lift cross-checks against the fixture file") {
  std::string path = std::string(CTXPHASE_DATA_DIR) + "/lift_fixtures.json";
  RunOutput r = run_cli("lift --kind psi- --class 2 --frame z --fixtures " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("fixture: MATCH") != std::string::npos);

  RunOutput y = run_cli("lift --kind phi+ --class 1 --frame y --fixtures " + path);
  CHECK(y.exit_code == 0);
  CHECK(y.stdout_text.find("fixture: MATCH") != std::string::npos);

  RunOutput missing = run_cli("lift --kind psi- --class 2 --frame z --fixtures /no/file");
  CHECK(missing.exit_code == 1);
}

TEST_CASE("closedforms and fixtures commands run") {
  RunOutput forms = run_cli("closedforms");
  CHECK(forms.exit_code == 0);
  CHECK(forms.stdout_text.find("kind=phi+") != std::string::npos);
  CHECK(forms.stdout_text.find("oracle_form=cos2(a-b)") != std::string::npos);

  RunOutput fx = run_cli("fixtures");
  CHECK(fx.exit_code == 0);
  CHECK(fx.stdout_text.find("\"lift_table\"") != std::string::npos);
}
