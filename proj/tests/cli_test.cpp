// Copyright 2026 The qcnn-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qcnn/dataset.hpp"
#include "qcnn/network.hpp"
#include "qcnn/pgm.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("qcnn_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Result run(const std::string& args, const std::string& env = "") const {
    const std::string cmd = "cd '" + dir_.string() + "' && " + env + " '" QCNN_CLI_PATH "' " + args + " 2>&1";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[512];
    while (std::fgets(buf, sizeof buf, p)) r.out += buf;
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  std::string slurp(const std::string& name) const {
    std::ifstream is(path(name), std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }

  std::size_t lines(const std::string& name) const {
    const auto s = slurp(name);
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
  }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream os(path(name), std::ios::binary);
    os << text;
  }

  fs::path dir_;
};

TEST_F(Cli, GenWritesHeaderPlusRows) {
  const auto r = run("gen --side 2 --count 1000 --seed 42 --out d.csv");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(lines("d.csv"), 1001u);
  EXPECT_NE(r.out.find("1000"), std::string::npos);
}

TEST_F(Cli, GenRejectsBadSide) {
  const auto r = run("gen --side 3 --out d.csv");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("2,4,8"), std::string::npos) << r.out;
}

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(run("gen --side 4 --count 50 --seed 9 --out a.csv").code, 0);
  ASSERT_EQ(run("gen --side 4 --count 50 --seed 9 --out b.csv").code, 0);
  ASSERT_EQ(run("gen --side 4 --count 50 --seed 10 --out c.csv").code, 0);
  EXPECT_EQ(slurp("a.csv"), slurp("b.csv"));
  EXPECT_NE(slurp("a.csv"), slurp("c.csv"));
}

TEST_F(Cli, SeedFromEnvironment) {
  ASSERT_EQ(run("gen --side 2 --count 20 --out a.csv", "QCNN_SEED=5").code, 0);
  ASSERT_EQ(run("gen --side 2 --count 20 --seed 5 --out b.csv").code, 0);
  ASSERT_EQ(run("gen --side 2 --count 20 --seed 6 --out c.csv", "QCNN_SEED=5").code, 0);
  EXPECT_EQ(slurp("a.csv"), slurp("b.csv"));
  EXPECT_NE(slurp("a.csv"), slurp("c.csv"));
}

TEST_F(Cli, TrainSeedPrecedence) {
  write("s.ini", "epochs = 2\nbatch = 4\nseed = 4\n");
  ASSERT_EQ(run("train --config s.ini --curve a.csv", "QCNN_SEED=9").code, 0);
  ASSERT_EQ(run("train --epochs 2 --batch 4 --seed 4 --curve b.csv").code, 0);
  ASSERT_EQ(run("train --epochs 2 --batch 4 --curve c.csv", "QCNN_SEED=4").code, 0);
  ASSERT_EQ(run("train --epochs 2 --batch 4 --curve d.csv").code, 0);
  EXPECT_EQ(slurp("a.csv"), slurp("b.csv"));
  EXPECT_EQ(slurp("a.csv"), slurp("c.csv"));
  EXPECT_NE(slurp("a.csv"), slurp("d.csv"));
}

TEST_F(Cli, TrainWritesArtifacts) {
  const auto r = run("train --arch conv --epochs 5 --batch 20 --lr 0.01 --seed 1 --jobs 2");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(lines("curve.csv"), 6u);
  EXPECT_EQ(slurp("curve.csv").substr(0, 10), "epoch,mse\n");
  EXPECT_EQ(lines("params.txt"), 4u);
  EXPECT_EQ(lines("train.log"), 5u);
  EXPECT_NE(r.out.find("final_mse="), std::string::npos);
  EXPECT_NE(r.out.find("circuit_runs="), std::string::npos);
  EXPECT_NE(r.out.find("wall_clock_s="), std::string::npos);
}

TEST_F(Cli, TrainRejectsNegativeLearningRate) { EXPECT_EQ(run("train --lr -1 --epochs 1").code, 2); }

TEST_F(Cli, TrainRejectsBadChoice) { EXPECT_EQ(run("train --grad momentum --epochs 1").code, 2); }

TEST_F(Cli, ConfigFileAndOverrides) {
  write("run.ini", "arch = conv-pool-pool\nepochs = 2\nbatch = 4\nlr = 0.05\nseed = 3\n");
  ASSERT_EQ(run("train --config run.ini --curve a.csv --params-out a.txt").code, 0);
  EXPECT_EQ(lines("a.csv"), 3u);
  ASSERT_EQ(run("train --config run.ini --epochs 4 --curve b.csv --params-out b.txt").code, 0);
  EXPECT_EQ(lines("b.csv"), 5u);
  EXPECT_EQ(slurp("b.csv").substr(0, slurp("a.csv").size()), slurp("a.csv"));

  write("bad.ini", "epochs = 2\nmomentum = 0.9\n");
  const auto bad = run("train --config bad.ini");
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("momentum"), std::string::npos) << bad.out;
  write("neg.ini", "epochs = 2\nlr = -1\n");
  EXPECT_EQ(run("train --config neg.ini").code, 2);
  EXPECT_EQ(run("train --config missing.ini").code, 2);
  write("garbled.ini", "epochs = many\n");
  EXPECT_EQ(run("train --config garbled.ini").code, 2);
}

TEST_F(Cli, WidthCapExitsThree) {
  const auto r = run("train --arch conv-pool-conv-pool --epochs 1 --batch 1 --width-cap 6");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("peak active width 7"), std::string::npos) << r.out;
}

TEST_F(Cli, EvalReportsAndIsDeterministic) {
  ASSERT_EQ(run("gen --side 4 --count 30 --seed 2 --out d.csv").code, 0);
  write("p.txt", "0.1\n0.2\n0.3\n0.4\n");
  const auto a = run("eval --params p.txt --data d.csv");
  const auto b = run("eval --params p.txt --data d.csv --jobs 3");
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("accuracy="), std::string::npos);
  EXPECT_NE(a.out.find("mse="), std::string::npos);
  const auto pos = a.out.find("accuracy=");
  const double acc = std::stod(a.out.substr(pos + 9));
  EXPECT_TRUE(acc >= 0 && acc <= 1);
}

TEST_F(Cli, EvalErrors) {
  write("empty.csv", qcnn::dataset_header(2) + "\n");
  write("p.txt", "0.1\n0.2\n0.3\n0.4\n");
  EXPECT_EQ(run("eval --params p.txt --data empty.csv").code, 2);
  ASSERT_EQ(run("gen --side 8 --count 3 --out d.csv").code, 0);
  const auto r = run("eval --params p.txt --data d.csv");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run("eval --params missing.txt --data d.csv").code, 2);
}

TEST_F(Cli, FeatmapHalvesImage) {
  qcnn::GrayImage img{28, 28, std::vector<int>(28 * 28)};
  for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = static_cast<int>((i * 37) % 256);
  qcnn::save_pgm(img, path("in.pgm"));
  write("k.txt", "0.5\n1.0\n1.5\n2.0\n");
  ASSERT_EQ(run("featmap --in in.pgm --params k.txt --out out.pgm").code, 0);
  const auto out = qcnn::load_pgm(path("out.pgm"));
  EXPECT_EQ(out.width, 14u);
  EXPECT_EQ(out.height, 14u);
  for (int v : out.pixels) EXPECT_TRUE(v >= 0 && v <= 255);
}

TEST_F(Cli, FeatmapConstantAndOdd) {
  qcnn::save_pgm(qcnn::GrayImage{6, 4, std::vector<int>(24, 100)}, path("flat.pgm"));
  write("k.txt", "0.5\n1.0\n1.5\n2.0\n");
  ASSERT_EQ(run("featmap --in flat.pgm --params k.txt --out out.pgm").code, 0);
  const auto out = qcnn::load_pgm(path("out.pgm"));
  for (int v : out.pixels) EXPECT_EQ(v, out.pixels.front());

  qcnn::save_pgm(qcnn::GrayImage{5, 5, std::vector<int>(25, 0)}, path("odd.pgm"));
  EXPECT_EQ(run("featmap --in odd.pgm --params k.txt --out o.pgm").code, 2);
}

TEST_F(Cli, BaselineCurve) {
  ASSERT_EQ(run("baseline --epochs 7 --batch 16 --lr 0.1 --seed 2 --curve b.csv").code, 0);
  EXPECT_EQ(lines("b.csv"), 8u);
  ASSERT_EQ(run("baseline --epochs 7 --batch 16 --lr 0.1 --seed 2 --curve c.csv").code, 0);
  EXPECT_EQ(slurp("b.csv"), slurp("c.csv"));
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("gen --side 2").code, 2);
}

}  // namespace
