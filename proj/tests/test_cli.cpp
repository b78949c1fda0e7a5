// End-to-end checks of the command line tool, driven through popen. The
// binary path comes in via TEMPNET_BIN and fixture CSVs via TEMPNET_SOURCE_DIR.
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "tempnet/bundle.hpp"
#include "tempnet/core.hpp"

namespace {

struct RunResult {
    int code = -1;
    std::string output;  // stdout and stderr interleaved
};

RunResult run_sh(const std::string& cmd) {
    RunResult result;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.output.append(buf.data(), n);
    const int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

RunResult run_cli(const std::string& args) {
    return run_sh(std::string(TEMPNET_BIN) + " " + args);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_hits(const std::string& hay, const std::string& needle) {
    int hits = 0;
    for (size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1))
        ++hits;
    return hits;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("tempnet_cli_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string str() const { return path.string(); }
};

const std::string kEdges = std::string(TEMPNET_SOURCE_DIR) + "/data/sample_edges.csv";
const std::string kNodes = std::string(TEMPNET_SOURCE_DIR) + "/data/sample_nodes.csv";

void make_bundle(const TempDir& dir) {
    RunResult r = run_cli("ingest --edges " + kEdges + " --nodes " + kNodes + " --out " +
                          dir.str());
    REQUIRE(r.code == 0);
}

}  // namespace

TEST_CASE("cli ingest reports the bundle and writes identical bytes across runs") {
    TempDir a;
    TempDir b;
    RunResult ra = run_cli("ingest --edges " + kEdges + " --nodes " + kNodes + " --out " +
                           a.str());
    REQUIRE(ra.code == 0);
    CHECK(ra.output.find("wrote bundle " + a.str()) != std::string::npos);
    CHECK(ra.output.find("(12 vertices, 16 edges)") != std::string::npos);
    CHECK(ra.output.find("warning:") != std::string::npos);  // one bad experience code

    RunResult rb = run_cli("ingest --edges " + kEdges + " --nodes " + kNodes + " --out " +
                           b.str());
    REQUIRE(rb.code == 0);
    for (const char* name : {"vertices.csv", "spells.csv", "meta.json"})
        CHECK(slurp(a.path / name) == slurp(b.path / name));
}

TEST_CASE("cli summary prints the canonical observation phrases") {
    TempDir bundle;
    make_bundle(bundle);
    RunResult r = run_cli("summary --bundle " + bundle.str());
    CHECK(r.code == 0);
    CHECK(r.output.find("vertices = 12") != std::string::npos);
    CHECK(r.output.find("total edges= 16") != std::string::npos);
    CHECK(r.output.find("distinct change times: 10") != std::string::npos);
    CHECK(r.output.find("0 until 12") != std::string::npos);
}

TEST_CASE("cli metrics writes tagged files and reruns byte-identically") {
    TempDir bundle;
    make_bundle(bundle);
    TempDir o1;
    TempDir o2;
    const std::string args = "metrics --bundle " + bundle.str() +
                             " --snafun gden --snafun mutuality"
                             " --start 0 --end 12 --interval 1 --aggregate 0 --out ";
    RunResult r1 = run_cli(args + o1.str());
    REQUIRE(r1.code == 0);
    const std::filesystem::path gden = o1.path / "gden_s0_e12_i1_d0.csv";
    REQUIRE(std::filesystem::exists(gden));
    CHECK(std::filesystem::exists(o1.path / "mutuality_s0_e12_i1_d0.csv"));
    CHECK(r1.output.find("wrote " + gden.string()) != std::string::npos);

    const std::string content = slurp(gden);
    CHECK(content.rfind("t,gden\n", 0) == 0);
    CHECK(count_hits(content, "\n") == 14);  // header + slices at 0..12

    RunResult r2 = run_cli(args + o2.str());
    REQUIRE(r2.code == 0);
    CHECK(slurp(o2.path / "gden_s0_e12_i1_d0.csv") == content);

    RunResult rj = run_cli("metrics --bundle " + bundle.str() +
                           " --snafun gden --start 0 --end 2 --format json --out " + o1.str());
    REQUIRE(rj.code == 0);
    CHECK(slurp(o1.path / "gden_s0_e2_i1_d0.json").find("\"columns\"") != std::string::npos);
}

TEST_CASE("cli rejects an unknown metric selector and lists the menu") {
    TempDir bundle;
    make_bundle(bundle);
    TempDir out;
    RunResult r = run_cli("metrics --bundle " + bundle.str() +
                          " --snafun nosuchthing --start 0 --end 12 --out " + out.str());
    CHECK(r.code == 2);
    CHECK(r.output.find("error:") != std::string::npos);
    CHECK(r.output.find("nosuchthing") != std::string::npos);
    CHECK(r.output.find("gden") != std::string::npos);
}

TEST_CASE("cli errors carry exit code 2 and name the offending input") {
    TempDir out;
    RunResult missing = run_cli("ingest --edges /no/such/nope.csv --nodes " + kNodes +
                                " --out " + out.str());
    CHECK(missing.code == 2);
    CHECK(missing.output.find("nope.csv") != std::string::npos);

    RunResult badflag = run_cli("paths --bundle " + out.str() +
                                " --seed 1 --start 0 --end 1 --direction sideways");
    CHECK(badflag.code == 2);

    RunResult nosub = run_cli("");
    CHECK(nosub.code == 2);

    RunResult help = run_cli("--help");
    CHECK(help.code == 0);
    CHECK(help.output.find("ingest") != std::string::npos);
}

TEST_CASE("cli paths writes one row per vertex, seed first, deterministically") {
    TempDir bundle;
    make_bundle(bundle);
    TempDir o1;
    TempDir o2;
    const std::string args = "paths --bundle " + bundle.str() +
                             " --seed 1 --start 0 --end 12 --out ";
    RunResult r1 = run_cli(args + o1.str());
    REQUIRE(r1.code == 0);
    const std::filesystem::path fp = o1.path / "paths_seed1_s0_e12_st0_fwd_depart.csv";
    REQUIRE(std::filesystem::exists(fp));

    const std::string content = slurp(fp);
    const std::vector<std::string> lines = split_lines(content);
    REQUIRE(lines.size() == 13);  // header + 12 vertices
    CHECK(lines[0] == "tdist,previous,gsteps,start,end,direction,type");
    CHECK(lines[1] == "0,0,0,0,12,fwd,earliest.arrive");

    RunResult r2 = run_cli(args + o2.str());
    REQUIRE(r2.code == 0);
    CHECK(slurp(o2.path / "paths_seed1_s0_e12_st0_fwd_depart.csv") == content);
}

TEST_CASE("cli dynamics defaults its output directory to TEMPNET_OUT") {
    TempDir bundle;
    make_bundle(bundle);
    TempDir out;
    RunResult r = run_sh("TEMPNET_OUT=" + out.str() + " " + std::string(TEMPNET_BIN) +
                         " dynamics --bundle " + bundle.str() + " --interval 1");
    REQUIRE(r.code == 0);

    for (const char* name : {"formation_i1.csv", "dissolution_i1.csv"}) {
        const std::filesystem::path fp = out.path / name;
        REQUIRE(std::filesystem::exists(fp));
        const std::vector<std::string> lines = split_lines(slurp(fp));
        REQUIRE(lines.size() >= 2);
        CHECK(lines[0] == "t,count");
        double total = 0;
        for (size_t i = 1; i < lines.size(); ++i) {
            const size_t comma = lines[i].find(',');
            REQUIRE(comma != std::string::npos);
            total += std::stod(lines[i].substr(comma + 1));
        }
        CHECK(total == 16.0);  // every spell forms once and dissolves once
    }
}

TEST_CASE("cli export-frames agrees with in-process window extraction") {
    TempDir bundle;
    make_bundle(bundle);
    TempDir out;
    RunResult r = run_cli("export-frames --bundle " + bundle.str() +
                          " --start 0 --end 0 --interval 1 --aggregate 12 --out " + out.str());
    REQUIRE(r.code == 0);
    const std::filesystem::path fp = out.path / "frame_0_12.dot";
    REQUIRE(std::filesystem::exists(fp));

    const tempnet::TemporalNetwork net = tempnet::read_bundle(bundle.str());
    const tempnet::StaticSlice slice = tempnet::extract_window(net, 0, 12);
    REQUIRE(slice.arcs.size() > 0);
    const std::string dot = slurp(fp);
    CHECK(count_hits(dot, " -> ") == static_cast<int>(slice.arcs.size()));
    CHECK(count_hits(dot, "label=") == 12);

    RunResult r2 = run_cli("export-frames --bundle " + bundle.str() +
                           " --start 20 --end 20 --interval 1 --aggregate 0 --out " + out.str());
    REQUIRE(r2.code == 0);
    const std::string empty_dot = slurp(out.path / "frame_20_20.dot");
    CHECK(count_hits(empty_dot, " -> ") == 0);
    CHECK(count_hits(empty_dot, "label=") == 12);
}

TEST_CASE("cli centrality writes wide and long csv shapes") {
    TempDir bundle;
    make_bundle(bundle);
    TempDir wide;
    TempDir longdir;
    const std::string base = "centrality --bundle " + bundle.str() +
                             " --measure degree --cmode freeman --start 0 --end 2 --interval 1";
    RunResult rw = run_cli(base + " --out " + wide.str());
    REQUIRE(rw.code == 0);
    const std::filesystem::path wp = wide.path / "degree_freeman_s0_e2_i1_d0.csv";
    REQUIRE(std::filesystem::exists(wp));
    const std::vector<std::string> wlines = split_lines(slurp(wp));
    REQUIRE(wlines.size() == 4);  // header + t = 0, 1, 2
    CHECK(wlines[0].rfind("t,", 0) == 0);
    CHECK(count_hits(wlines[0], ",") == 12);

    RunResult rl = run_cli(base + " --shape long --out " + longdir.str());
    REQUIRE(rl.code == 0);
    const std::vector<std::string> llines =
        split_lines(slurp(longdir.path / "degree_freeman_s0_e2_i1_d0.csv"));
    REQUIRE(llines.size() == 1 + 3 * 12);
    CHECK(llines[0] == "t,vertex,metric,value");
    CHECK(llines[1].find(",degree,") != std::string::npos);
}
