#include "stdd/output.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace stdd;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    fs::path path = fs::temp_directory_path() / ("stdd_output_" + std::to_string(std::random_device{}()));
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST(Output, EmptyTablesHaveHeaders) {
    TempDir dir;
    write_table_csv(dir.path / "t.csv", {});
    EXPECT_EQ(slurp(dir.path / "t.csv"), "nx,factor,method,solves_c,solves_r,iterations\n");
    write_residual_csv(dir.path / "sub" / "r.csv", SolveStats{}, Method::schur);
    EXPECT_EQ(slurp(dir.path / "sub" / "r.csv"), "iteration,solves,residual\n");
}

TEST(Output, ResidualRowsChargeSolves) {
    TempDir dir;
    SolveStats st;
    st.residuals = {1.0, 0.5};
    write_residual_csv(dir.path / "r.csv", st, Method::schur_nn);
    const std::string s = slurp(dir.path / "r.csv");
    EXPECT_NE(s.find("\n1,2,0.5"), std::string::npos) << s;
}

TEST(Output, SnapshotRoundTripIsExact) {
    TempDir dir;
    Snapshot s;
    s.time = 1.0 / 3.0;
    s.x = {0.0, 0.1, 0.3};
    s.y = {0.0, 0.7};
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-1e-7, 1e7);
    s.c = {u(gen), u(gen)};
    for (int e = 0; e < 3 + 4; ++e) s.r.push_back(u(gen));
    write_snapshot(dir.path / "a.snapshot", s);
    const Snapshot t = read_snapshot(dir.path / "a.snapshot");
    EXPECT_EQ(t.time, s.time);
    EXPECT_EQ(t.x, s.x);
    EXPECT_EQ(t.y, s.y);
    EXPECT_EQ(t.c, s.c);
    EXPECT_EQ(t.r, s.r);
}

TEST(Output, FailuresThrow) {
    TempDir dir;
    fs::create_directories(dir.path);
    std::ofstream(dir.path / "file") << "x";
    const Snapshot s{0.0, {0.0, 1.0}, {0.0, 1.0}, {0.5}, {0, 0, 0, 0}};
    EXPECT_THROW(write_snapshot(dir.path / "file" / "inside.snapshot", s), std::runtime_error);
    EXPECT_THROW(write_snapshot(dir.path / "x.snapshot", Snapshot{}), std::invalid_argument);
    std::ofstream(dir.path / "bad.snapshot") << "# not a snapshot\n";
    EXPECT_THROW(read_snapshot(dir.path / "bad.snapshot"), std::runtime_error);
    EXPECT_THROW(read_snapshot(dir.path / "missing"), std::runtime_error);
}

TEST(Output, CollectorKeepsTheLastStepOfEachSubdomain) {
    const auto m = StructuredMesh::uniform(2, 1, 0.0, 1.0, 0.0, 1.0);
    const Decomposition dd(m, {CellBox{0, 1, 0, 1}, CellBox{1, 2, 0, 1}});
    SnapshotCollector col(dd, 2.0);
    auto obs = col.observer();
    const int ne = dd.subdomains()[0].mesh.num_edges();
    obs(0, 1, DiffusionStep{{1.0}, std::vector<double>(ne, 0.1), {}});
    obs(0, 2, DiffusionStep{{2.0}, std::vector<double>(ne, 0.2), {}});
    obs(1, 1, DiffusionStep{{5.0}, std::vector<double>(ne, 0.5), {}});
    const Snapshot& s = col.snapshot();
    EXPECT_EQ(s.time, 2.0);
    EXPECT_EQ(s.c, (std::vector<double>{2.0, 5.0}));
    EXPECT_EQ(s.r.size(), static_cast<std::size_t>(m.num_edges()));
    EXPECT_EQ(s.r[m.vertical_edge(0, 0)], 0.2);
    EXPECT_EQ(s.r[m.vertical_edge(2, 0)], 0.5);
}
