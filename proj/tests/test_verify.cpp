#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tsopt/verify.hpp"

namespace fs = std::filesystem;

TEST_CASE("a tampered stress limit fails the matching criterion") {
  const fs::path shipped = TSOPT_CONFIG_DIR;
  const auto dir = fs::temp_directory_path() / "tsopt_tampered_configs";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::copy_file(shipped / "bd.json", dir / "bd.json");

  std::ifstream in(shipped / "bland.json");
  std::stringstream ss;
  ss << in.rdbuf();
  auto text = ss.str();
  const auto at = text.find("1.6e5");
  REQUIRE(at != std::string::npos);
  text.replace(at, 5, "1.5e4");
  std::ofstream(dir / "bland.json") << text;

  tsopt::VerifyOptions options;
  options.config_dir = dir;
  const auto results = tsopt::run_acceptance(options);
  CHECK_FALSE(tsopt::all_passed(results));
  const auto c3 = std::find_if(results.begin(), results.end(), [](const auto& r) { return r.id == 3; });
  REQUIRE(c3 != results.end());
  CHECK_FALSE(c3->passed);

  std::ostringstream table;
  tsopt::print_acceptance_table(results, table);
  CHECK(table.str().find("FAIL  criterion 3") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("empty result list is not a pass") {
  CHECK_FALSE(tsopt::all_passed({}));
}
