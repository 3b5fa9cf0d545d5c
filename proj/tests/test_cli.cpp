// End-to-end CLI checks: byte-exact stdout against committed golden files for
// every subcommand (the tool promises byte-identical output for identical
// configs), plus exit-code checks for the error paths.
//
// Usage:  test_cli <cf3-binary> <golden-dir> [write]
// "write" regenerates the golden files from the current binary instead of
// comparing, and still fails on nonzero exit codes.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct run_result {
    int rc = -1;
    std::string out;
};

run_result run(const std::string& bin, const std::string& args) {
    run_result r;
    std::string cmd = "'" + bin + "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    int status = pclose(p);
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct golden_case {
    const char* name; // golden file is <name>.txt
    const char* args; // arguments after the binary, already shell-quoted
};

const golden_case kGolden[] = {
    {"cf_convergents", "cf convergents 1,2,1"},
    {"cf_cylinder", "cf cylinder 1,2,1"},
    {"cf_diam", "cf diam 1^4,2,2"},
    {"lagrange_value", "lagrange value --period 1"},
    {"lagrange_markov", "lagrange markov --left-period 1,2 --right-period 2,1"},
    {"lagrange_identity", "lagrange identity --z 'sqrt(2)'"},
    {"lagrange_enclosure", "lagrange enclosure --stream linear:a=1,b=0 --i 2 --depth 40"},
    {"lagrange_translate", "lagrange translate --m 1"},
    {"sigma_enumerate", "sigma enumerate 3"},
    {"sigma_enumerate_csv", "sigma enumerate 3 --format csv"},
    {"sigma_count", "sigma count 3"},
    {"sigma_member", "sigma member 1,2,1 --t 3 --verify"},
    {"sigma_stability", "sigma stability 4"},
    {"gauge_classify", "gauge classify --gauge loginv:4 --target all"},
    {"gauge_gamma", "gauge gamma --gauge pow:1/2 --r 1/4"},
    {"gauge_factorial_ratio", "gauge factorial-ratio --k 2"},
    {"gauge_square", "gauge square --gauge loginv:4"},
    {"cantor_schedule", "cantor schedule --gauge logloginv --K 3"},
    {"cantor_schedule_csv", "cantor schedule --gauge logloginv --K 3 --format csv"},
    {"cantor_level", "cantor level --gauge logloginv --K 3 --n 2"},
    {"cantor_certificate", "cantor certificate --gauge logloginv --K 3 --n 2"},
    {"cantor_cover_csv", "cantor cover-k3 --gauge pow:1 --n 1 --n 2 --format csv"},
    {"cantor_zero_budget", "cantor zero-budget --d 1 --eps 1/1024"},
    {"cantor_mass_oracle", "cantor mass-oracle --seed 7 --count 2"},
};

struct exit_case {
    const char* label;
    std::string args;
    int want_rc;
};

std::string read_file(const std::filesystem::path& p, bool& ok) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        ok = false;
        return {};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    ok = true;
    return ss.str();
}

// first differing line, for a readable mismatch report
std::string first_diff(const std::string& a, const std::string& b) {
    std::istringstream sa(a), sb(b);
    std::string la, lb;
    int ln = 0;
    while (true) {
        ++ln;
        bool ga = static_cast<bool>(std::getline(sa, la));
        bool gb = static_cast<bool>(std::getline(sb, lb));
        if (!ga && !gb) return "same lines, different bytes";
        if (!ga || !gb || la != lb)
            return "line " + std::to_string(ln) + ": golden \"" + (ga ? la : "<eof>") +
                   "\" vs got \"" + (gb ? lb : "<eof>") + "\"";
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: test_cli <cf3-binary> <golden-dir> [write]\n");
        return 2;
    }
    std::string bin = argv[1];
    std::filesystem::path golden_dir = argv[2];
    bool write_mode = argc > 3 && std::string(argv[3]) == "write";
    int failures = 0;

    if (write_mode) std::filesystem::create_directories(golden_dir);

    for (const golden_case& c : kGolden) {
        run_result r = run(bin, c.args);
        std::filesystem::path gp = golden_dir / (std::string(c.name) + ".txt");
        if (r.rc != 0) {
            std::printf("FAIL %s: exit %d\n", c.name, r.rc);
            ++failures;
            continue;
        }
        if (write_mode) {
            std::ofstream out(gp, std::ios::binary);
            out << r.out;
            std::printf("wrote %s (%zu bytes)\n", gp.c_str(), r.out.size());
            continue;
        }
        bool ok = false;
        std::string want = read_file(gp, ok);
        if (!ok) {
            std::printf("FAIL %s: missing golden %s\n", c.name, gp.c_str());
            ++failures;
        } else if (want != r.out) {
            std::printf("FAIL %s: %s\n", c.name, first_diff(want, r.out).c_str());
            ++failures;
        } else {
            std::printf("ok   %s\n", c.name);
        }
    }

    // error paths: exit codes only (2 invalid input, 3 undecided, 4 regime)
    std::filesystem::path table_csv =
        std::filesystem::temp_directory_path() / "cf3_cli_table.csv";
    {
        std::ofstream t(table_csv);
        t << "# step gauge: eps,value rows, eps strictly descending\n";
        t << "1/4,1/2\n1/8,1/3\n";
    }
    const exit_case kExit[] = {
        {"seedless mass-oracle exits 2", "cantor mass-oracle --count 1", 2},
        {"bad word exits 2", "cf diam 1,0,3", 2},
        {"table classification exits 3 (inconclusive)",
         "gauge classify --gauge 'table:" + table_csv.string() + "' --target k13", 3},
        {"wrong-regime schedule exits 4", "cantor schedule --gauge pow:1/2 --K 2", 4},
    };
    for (const exit_case& c : kExit) {
        run_result r = run(bin, c.args);
        if (r.rc != c.want_rc) {
            std::printf("FAIL %s: exit %d, want %d\n", c.label, r.rc, c.want_rc);
            ++failures;
        } else {
            std::printf("ok   %s\n", c.label);
        }
    }
    std::filesystem::remove(table_csv);

    if (failures) std::printf("%d CLI case(s) failed\n", failures);
    return failures ? 1 : 0;
}
