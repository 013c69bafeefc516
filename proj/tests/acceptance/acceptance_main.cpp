// Acceptance runner: executes the numbered release criteria and prints one
// [PASS]/[FAIL] line each. Criterion 12 shells out to the CLI named on the
// command line and compares two full report runs byte for byte.
//
// usage: cmdegkit_acceptance <path-to-cli> [criterion]

#include <cmdegkit/acceptance.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

namespace {

bool read_file(const std::filesystem::path& p, std::string& out) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

cmdegkit::CriterionResult run_determinism(const std::string& cli) {
    cmdegkit::CriterionResult r;
    r.index = 12;
    r.name = "report-determinism";
    r.pass = false;

    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path();
    const std::string tag = std::to_string(
        static_cast<unsigned long>(::getpid()));
    const fs::path p1 = dir / ("cmdeg-det-" + tag + "-1.json");
    const fs::path p2 = dir / ("cmdeg-det-" + tag + "-2.json");

    auto run_once = [&](const fs::path& p) {
        std::string cmd = "\"" + cli + "\" report --format json --out \"" +
                          p.string() + "\"";
        // The suite exit code reflects criterion verdicts, not run health;
        // only the emitted bytes matter here.
        (void)std::system(cmd.c_str());
    };
    run_once(p1);
    run_once(p2);

    std::string a, b;
    const bool got_a = read_file(p1, a);
    const bool got_b = read_file(p2, b);
    std::error_code ec;
    fs::remove(p1, ec);
    fs::remove(p2, ec);

    if (!got_a || !got_b) {
        r.detail = "report run produced no output file";
        return r;
    }
    if (a.empty()) {
        r.detail = "report output is empty";
        return r;
    }
    if (a != b) {
        size_t i = 0;
        while (i < a.size() && i < b.size() && a[i] == b[i])
            ++i;
        r.detail = "runs differ at byte " + std::to_string(i);
        return r;
    }
    r.pass = true;
    r.detail = "two runs, " + std::to_string(a.size()) +
               " bytes, byte-identical";
    return r;
}

void emit(const cmdegkit::CriterionResult& r, bool& all_ok) {
    std::printf("[%s] %2d %s: %s\n", r.pass ? "PASS" : "FAIL", r.index,
                r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
    all_ok = all_ok && r.pass;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-cli> [criterion 1..12]\n",
                     argv[0]);
        return 2;
    }
    const std::string cli = argv[1];
    int only = 0;
    if (argc >= 3) {
        only = std::atoi(argv[2]);
        if (only < 1 || only > 12) {
            std::fprintf(stderr, "criterion index must be 1..12\n");
            return 2;
        }
    }

    bool all_ok = true;
    for (int i = 1; i <= int(cmdegkit::criterion_count()); ++i) {
        if (only != 0 && only != i)
            continue;
        emit(cmdegkit::run_criterion(i, cmdegkit::EvalContext{}), all_ok);
    }
    if (only == 0 || only == 12)
        emit(run_determinism(cli), all_ok);
    return all_ok ? 0 : 1;
}
