#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "spc/csv.hpp"
#include "spc/errors.hpp"
#include "spc/report.hpp"
#include "support.hpp"

using namespace spc;
using namespace spc::testing;
using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string data(const std::string& name) { return std::string(SPC_TEST_DATA) + "/" + name; }

std::vector<ConstraintSpec> specs(const IncompleteTable& t, const std::vector<std::string>& texts) {
    std::vector<ConstraintSpec> out;
    for (const auto& s : texts) out.push_back({s, parse_constraint(s, t.schema())});
    return out;
}

fs::path scratch_dir() {
    fs::path d = fs::temp_directory_path() / ("spc_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

int run_cli(const std::string& args, const fs::path& out) {
    std::string cmd = std::string(SPC_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Csv, LoadsTableFour) {
    auto t = load_csv(data("table4.csv"));
    EXPECT_EQ(t.rows(), 4u);
    EXPECT_EQ(t.schema().names(), (std::vector<std::string>{"X1", "X2"}));
    EXPECT_EQ(t.at(0, 0), kNull);
    EXPECT_EQ(t.cell_name(3, 1), "2");
}

TEST(Csv, CustomNullToken) {
    CsvOptions opt;
    opt.null_token = "NA";
    auto t = parse_csv_text("A,B\nNA,1\n,2\n", opt);
    EXPECT_EQ(t.at(0, 0), kNull);
    EXPECT_NE(t.at(1, 0), kNull);
    EXPECT_EQ(t.cell_name(1, 0), "");
}

TEST(Csv, QuotedCellsAreValues) {
    auto t = parse_csv_text("A,B\n\"\",\"x,y\"\n\"a\"\"b\",\n");
    EXPECT_NE(t.at(0, 0), kNull);
    EXPECT_EQ(t.cell_name(0, 1), "x,y");
    EXPECT_EQ(t.cell_name(1, 0), "a\"b");
    EXPECT_EQ(t.at(1, 1), kNull);
}

TEST(Csv, Errors) {
    EXPECT_THROW(parse_csv_text(""), InvalidInput);
    EXPECT_THROW(parse_csv_text("A,B\n1\n"), InvalidInput);
    EXPECT_THROW(parse_csv_text("A,A\n1,2\n"), InvalidInput);
    EXPECT_THROW(parse_csv_text("A,B\n\"1,2\n"), InvalidInput);
    EXPECT_THROW(parse_csv_text("A,B\n\"1\"x,2\n"), InvalidInput);
    EXPECT_THROW(load_csv("/nonexistent/table.csv"), InvalidInput);
}

TEST(Csv, HeaderlessNaming) {
    CsvOptions opt;
    opt.has_header = false;
    auto t = parse_csv_text("1,2,3\r\n4,,6\r\n", opt);
    EXPECT_EQ(t.schema().names(), (std::vector<std::string>{"A1", "A2", "A3"}));
    EXPECT_EQ(t.rows(), 2u);
    EXPECT_EQ(t.at(1, 1), kNull);
}

TEST(Csv, WriteReadRoundTrip) {
    auto t = tbl({"A", "B c"}, {{"x,1", "_"}, {"\"q\"", "2"}});
    std::ostringstream out;
    write_csv(out, t);
    CsvOptions opt;
    opt.null_token = kN;
    auto back = parse_csv_text(out.str(), opt);
    ASSERT_EQ(back.rows(), 2u);
    EXPECT_EQ(back.schema().names(), t.schema().names());
    EXPECT_EQ(back.cell_name(0, 0), "x,1");
    EXPECT_EQ(back.at(0, 1), kNull);
    EXPECT_EQ(back.cell_name(1, 0), "\"q\"");
}

TEST(ParseConstraint, Examples) {
    auto teach = teaching();
    EXPECT_EQ(parse_constraint("spfd(Semester,TeacherID -> CourseID)", teach.schema()), Constraint::fd({0, 1}, {2}));
    EXPECT_EQ(parse_constraint("spcj(TeacherID x CourseID)", teach.schema()), Constraint::cj({1}, {2}));
    EXPECT_EQ(parse_constraint("spkey(TeacherID, CourseID)", teach.schema()), Constraint::key({1, 2}));
    EXPECT_EQ(parse_constraint("spmvd(Semester ->> TeacherID)", teach.schema()), Constraint::mvd({0}, {1}));
    EXPECT_EQ(parse_constraint("nmvd(Semester ->> TeacherID)", teach.schema()), Constraint::nmvd({0}, {1}));
    auto xt = tbl({"x", "A", "B"}, {});
    EXPECT_EQ(parse_constraint("spcj(x,A x B)", xt.schema()), Constraint::cj({0, 1}, {2}));
}

TEST(ParseConstraint, CanonicalTextParsesBack) {
    auto t = tbl({"X1", "X2", "Y"}, {});
    for (const Constraint& c : {Constraint::key({0, 2}), Constraint::fd({0, 1}, {2}), Constraint::mvd({0}, {1, 2}),
                                Constraint::cj({0}, {1, 2}), Constraint::nmvd({1}, {2})})
        EXPECT_EQ(parse_constraint(to_string(c, t.schema()), t.schema()), c);
}

TEST(ParseConstraint, Errors) {
    auto s = teaching().schema();
    EXPECT_THROW(parse_constraint("spfoo(Semester)", s), InvalidInput);
    EXPECT_THROW(parse_constraint("spkey(Nope)", s), InvalidInput);
    EXPECT_THROW(parse_constraint("spfd( -> CourseID)", s), InvalidInput);
    EXPECT_THROW(parse_constraint("spfd(Semester CourseID)", s), InvalidInput);
    EXPECT_THROW(parse_constraint("spcj(Semester)", s), InvalidInput);
    EXPECT_THROW(parse_constraint("spkey(Semester", s), InvalidInput);
}

TEST(Run, TableFourKey) {
    auto t = load_csv(data("table4.csv"));
    auto r = run(t, specs(t, {"spkey(X1,X2)"}));
    ASSERT_EQ(r.constraints.size(), 1u);
    const auto& c = r.constraints[0];
    EXPECT_EQ(c.status, RunStatus::Violated);
    EXPECT_EQ(c.g3->str(), "2/4");
    EXPECT_EQ(c.g5->str(), "1/4");
    EXPECT_EQ(exit_code(r), 1);
}

TEST(Run, TeachingFdAndOrder) {
    auto t = load_csv(data("teaching.csv"));
    auto r = run(t, specs(t, {"spfd(Semester,TeacherID -> CourseID)", "spkey(TeacherID,CourseID)"}));
    ASSERT_EQ(r.constraints.size(), 2u);
    EXPECT_EQ(r.constraints[0].g3->str(), "3/6");
    EXPECT_EQ(r.constraints[0].g5->str(), "1/6");
    EXPECT_EQ(r.constraints[1].status, RunStatus::Holds);
}

TEST(Run, EmptySpecList) {
    auto t = table4();
    auto r = run(t, {});
    EXPECT_TRUE(r.constraints.empty());
    EXPECT_EQ(exit_code(r), 0);
    auto j = Json::parse(to_json(r, t, {}));
    EXPECT_TRUE(j["constraints"].empty());
}

TEST(Run, ComponentMeasureIsForKeysOnly) {
    auto t = teaching();
    RunOptions opt;
    opt.g4 = true;
    EXPECT_THROW(run(t, specs(t, {"spfd(Semester -> CourseID)"}), opt), InvalidInput);
    auto r = run(t, specs(t, {"spkey(Semester,TeacherID)"}), opt);
    EXPECT_TRUE(r.constraints[0].g4.has_value());
}

TEST(Run, BudgetExhaustionMapsToExitThree) {
    auto t = spfd_six();
    RunOptions opt;
    opt.budget = 1;
    auto r = run(t, specs(t, {"spfd(X1,X2 -> Y)"}), opt);
    EXPECT_EQ(r.constraints[0].status, RunStatus::BudgetExceeded);
    EXPECT_EQ(exit_code(r), 3);
    auto j = Json::parse(to_json(r, t, opt));
    EXPECT_TRUE(j["constraints"][0]["budget"]["exceeded"].get<bool>());
}

TEST(Run, OracleCrossCheckAgrees) {
    auto t = load_csv(data("table4.csv"));
    RunOptions opt;
    opt.verify_with_oracle = true;
    auto r = run(t, specs(t, {"spkey(X1,X2)", "spmvd(X1 ->> X2)", "spcj(X1 x X2)"}), opt);
    for (const auto& c : r.constraints) {
        EXPECT_TRUE(c.oracle.performed);
        EXPECT_TRUE(c.oracle.agrees) << c.oracle.note;
    }
}

TEST(Json, WitnessesReplay) {
    auto t = spfd_six();
    RunOptions opt;
    auto r = run(t, specs(t, {"spfd(X1,X2 -> Y)"}), opt);
    auto j = Json::parse(to_json(r, t, opt));
    const auto& c = j["constraints"][0];
    EXPECT_EQ(c["status"], "violated");
    EXPECT_EQ(c["measures"]["g3"]["fraction"], "2/6");
    EXPECT_EQ(c["measures"]["g3"]["reduced"], "1/3");

    // Rebuild the removal world from the JSON and replay it.
    std::vector<std::size_t> removed = c["witnesses"]["removal"].get<std::vector<std::size_t>>();
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : c["witnesses"]["removal_world"]["rows"]) rows.push_back(row.get<std::vector<std::string>>());
    auto world = IncompleteTable::from_strings(t.schema().names(), rows, kN, t.dictionary());
    EXPECT_TRUE(is_world_of(t.without(removed), world));
    EXPECT_TRUE(holds_fd(world, AttributeSet{0, 1}, AttributeSet{2}));

    std::vector<Row> added;
    for (const auto& row : c["witnesses"]["addition"]) {
        Row r2;
        for (const auto& cell : row) r2.push_back(cell.is_null() ? kNull : t.value(cell.get<std::string>()));
        added.push_back(r2);
    }
    std::vector<std::vector<std::string>> arows;
    for (const auto& row : c["witnesses"]["addition_world"]["rows"]) arows.push_back(row.get<std::vector<std::string>>());
    auto aworld = IncompleteTable::from_strings(t.schema().names(), arows, kN, t.dictionary());
    EXPECT_TRUE(is_world_of(t.with_rows(added), aworld));
    EXPECT_TRUE(holds_fd(aworld, AttributeSet{0, 1}, AttributeSet{2}));
    EXPECT_TRUE(c["witnesses"]["addition_world"]["origin"].back().is_null());
}

TEST(Json, FractionsAgreeWithDecimalsAndAreDeterministic) {
    RunOptions opt;
    opt.g4 = true;
    auto report = [&] {
        auto t = load_csv(data("cars.csv"));
        return to_json(run(t, specs(t, {"spkey(Car_Model,Door_No)"}), opt), t, opt);
    };
    std::string a = report();
    EXPECT_EQ(a, report());
    auto j = Json::parse(a);
    for (const auto& [name, m] : j["constraints"][0]["measures"].items()) {
        Ratio r = parse_ratio(m["fraction"].get<std::string>());
        EXPECT_NEAR(std::stod(m["decimal"].get<std::string>()), r.to_double(), 1e-9) << name;
        EXPECT_EQ(r.reduced_str(), m["reduced"].get<std::string>());
    }
}

TEST(Text, MentionsEveryConstraint) {
    auto t = teaching();
    RunOptions opt;
    auto r = run(t, specs(t, {"spfd(Semester,TeacherID -> CourseID)", "spcj(TeacherID x CourseID)"}), opt);
    std::string text = to_text(r, opt);
    EXPECT_NE(text.find("3/6"), std::string::npos);
    EXPECT_NE(text.find("spcj"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    fs::path dir = scratch_dir();
    fs::path out = dir / "out.txt";
    EXPECT_EQ(run_cli("check --table " + data("table4.csv") + " --constraint 'spkey(X1,X2)'", out), 1);
    EXPECT_EQ(run_cli("check --table " + data("teaching.csv") + " --constraint 'spkey(TeacherID,CourseID)'", out), 0);
    EXPECT_EQ(run_cli("check --table " + data("table4.csv") + " --constraint 'spkey(Nope)'", out), 2);
    EXPECT_EQ(run_cli("check --table /nonexistent.csv --constraint 'spkey(A)'", out), 2);
    EXPECT_EQ(run_cli("measure --table " + data("spfd_six.csv") + " --constraint 'spfd(X1,X2 -> Y)' --budget 1", out), 3);
    fs::remove_all(dir);
}

TEST(Cli, MeasureWritesJson) {
    fs::path dir = scratch_dir();
    fs::path json = dir / "report.json";
    EXPECT_EQ(run_cli("measure --table " + data("table4.csv") + " --constraint 'spkey(X1,X2)' --measures g3,g4,g5 --json " +
                          json.string(),
                      dir / "out.txt"),
              1);
    auto j = Json::parse(slurp(json));
    EXPECT_EQ(j["constraints"][0]["measures"]["g3"]["fraction"], "2/4");
    EXPECT_EQ(j["constraints"][0]["measures"]["g4"]["reduced"], "1/2");
    EXPECT_EQ(j["constraints"][0]["measures"]["g5"]["fraction"], "1/4");
    EXPECT_EQ(j["exit_code"], 1);
    fs::remove_all(dir);
}

TEST(Cli, GenerateThenVerify) {
    fs::path dir = scratch_dir();
    std::string prefix = (dir / "inst").string();
    EXPECT_EQ(run_cli("generate thm1 --p 2 --q 3 --out " + prefix, dir / "out.txt"), 0);
    EXPECT_TRUE(fs::exists(prefix + ".csv"));
    auto manifest = Json::parse(slurp(prefix + ".json"));
    EXPECT_EQ(manifest["construction"], "thm1");
    EXPECT_EQ(manifest["expected"]["g3_minus_g5"], "8/12");
    EXPECT_EQ(run_cli("verify --manifest " + prefix + ".json", dir / "out.txt"), 0);
    EXPECT_EQ(run_cli("measure --table " + prefix + ".csv --constraint '" + manifest["constraint"].get<std::string>() + "'",
                      dir / "out.txt"),
              1);
    EXPECT_EQ(run_cli("generate maxclique --vertices 3 --edges 0-1,1-2 --k 3 --out " + prefix, dir / "out.txt"), 0);
    EXPECT_EQ(run_cli("verify --manifest " + prefix + ".json", dir / "out.txt"), 0);
    EXPECT_EQ(run_cli("generate prop3 --p 3 --q 3 --out " + prefix, dir / "out.txt"), 2);
    fs::remove_all(dir);
}
