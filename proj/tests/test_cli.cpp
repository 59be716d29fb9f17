#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#ifndef ICRYPT_BIN
#define ICRYPT_BIN "./icrypt"
#endif

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
};

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("icrypt-cli-test-" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Result run(const std::string& args) {
    fs::path out_file = work_dir() / "stdout.txt";
    std::string cmd = std::string(ICRYPT_BIN) + " " + args + " > " +
                      out_file.string() + " 2>&1";
    int raw = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string path(const char* name) { return (work_dir() / name).string(); }

}  // namespace

TEST_CASE("keygen encrypt decrypt roundtrip") {
    Result kg = run("--seed 1 keygen --scheme ff-cyclic --p 31 --s 5 --b 3 --messages 5 --out " +
                    path("key.json"));
    CHECK(kg.code == 0);
    CHECK(kg.out.find("fingerprint ") == 0);

    Result enc = run("--seed 2 encrypt --pub " + path("key.json") + " --msg 2 --out " +
                     path("ct.json"));
    CHECK(enc.code == 0);

    Result dec = run("decrypt --priv " + path("key.json") + " --ct " + path("ct.json"));
    CHECK(dec.code == 0);
    CHECK(dec.out.find("\n2\n") != std::string::npos);
}

TEST_CASE("byte stream roundtrip") {
    std::string payload = "invariant";
    {
        std::ofstream out(path("msg.bin"), std::ios::binary);
        out << payload;
    }
    CHECK(run("--seed 3 keygen --scheme ff-cyclic --p 31 --s 5 --b 2 --messages 5 --conjugate "
              "--out " + path("ckey.json")).code == 0);
    CHECK(run("--seed 4 encrypt --pub " + path("ckey.json") + " --in " + path("msg.bin") +
              " --out " + path("cts.json")).code == 0);
    Result dec = run("decrypt --priv " + path("ckey.json") + " --ct " + path("cts.json"));
    CHECK(dec.code == 0);
    CHECK(dec.out.find(payload) != std::string::npos);
}

TEST_CASE("same seed gives identical keys") {
    std::string cmd = "--seed 7 keygen --scheme number-ring --d 0 --seeds 2,3 --q-set 0,1,2 "
                      "--n 2 --e 3,1 --gens 2 --messages 3 --out ";
    CHECK(run(cmd + path("k1.json")).code == 0);
    CHECK(run(cmd + path("k2.json")).code == 0);
    CHECK(slurp(path("k1.json")) == slurp(path("k2.json")));
    CHECK(run("--seed 8 " + cmd.substr(9) + path("k3.json")).code == 0);
    CHECK(slurp(path("k1.json")) != slurp(path("k3.json")));
}

TEST_CASE("attacks and exit codes") {
    // dlog attack succeeds on an unconjugated cyclic key
    CHECK(run("--seed 9 keygen --scheme ff-cyclic --p 31 --s 5 --b 3 --messages 5 --out " +
              path("dkey.json")).code == 0);
    CHECK(run("--seed 10 encrypt --pub " + path("dkey.json") + " --msg 4 --out " +
              path("dct.json")).code == 0);
    Result att = run("attack dlog --pub " + path("dkey.json") + " --ct " + path("dct.json"));
    CHECK(att.code == 0);
    CHECK(att.out.find("\"success\": true") != std::string::npos);
    CHECK(att.out.find("\"recoveredB\": \"3\"") != std::string::npos);

    // atoms attack refuses a non Euclidean number ring
    CHECK(run("--seed 11 keygen --scheme number-ring --d -5 --seeds 2,1+1t --q-set 0,1 "
              "--n 2 --e 2,1 --gens 2 --messages 3 --out " + path("q5key.json")).code == 0);
    CHECK(run("attack atoms --pub " + path("q5key.json")).code == 3);

    // atoms attack succeeds over the rationals
    CHECK(run("--seed 12 keygen --scheme number-ring --d 0 --seeds 2,3 --q-set 0,1,2 "
              "--n 2 --e 2,1 --gens 2 --messages 3 --out " + path("zkey.json")).code == 0);
    CHECK(run("--seed 13 encrypt --pub " + path("zkey.json") + " --msg 1 --out " +
              path("zct.json")).code == 0);
    Result za = run("attack atoms --pub " + path("zkey.json") + " --ct " + path("zct.json"));
    CHECK(za.code == 0);
    CHECK(za.out.find("\"success\": true") != std::string::npos);

    // usage errors
    CHECK(run("keygen --scheme nonsense").code == 1);
    CHECK(run("--seed 1 keygen --scheme ff-cyclic --p 31 --s 6 --b 1").code == 1);
    CHECK(run("decrypt --priv " + path("no-such-file.json") + " --ct " +
              path("dct.json")).code == 4);
}

TEST_CASE("fingerprint mismatch is rejected") {
    CHECK(run("--seed 20 keygen --scheme ff-cyclic --p 31 --s 5 --b 3 --messages 4 --out " +
              path("a.json")).code == 0);
    CHECK(run("--seed 21 keygen --scheme ff-cyclic --p 31 --s 5 --b 2 --messages 4 --out " +
              path("b.json")).code == 0);
    CHECK(run("--seed 22 encrypt --pub " + path("a.json") + " --msg 1 --out " +
              path("act.json")).code == 0);
    CHECK(run("decrypt --priv " + path("b.json") + " --ct " + path("act.json")).code == 4);
}

TEST_CASE("inspect") {
    CHECK(run("--seed 30 keygen --scheme ff-cyclic --p 31 --s 5 --b 3 --messages 5 --out " +
              path("ikey.json")).code == 0);
    Result ins = run("inspect --pub " + path("ikey.json"));
    CHECK(ins.code == 0);
    CHECK(ins.out.find("\"expansionRatio\": \"5\"") != std::string::npos);
    CHECK(ins.out.find("\"minimalInvariantDegree\": 3") != std::string::npos);
    CHECK(ins.out.find("invariantLatticeBasis") != std::string::npos);
}

TEST_CASE("bench") {
    {
        std::ofstream out(path("exp.json"));
        out << R"([{"p":"31","s":5,"b":3,"messages":5},{"p":"31","s":5,"b":3,"messages":2}])";
    }
    Result b = run("bench expansion --params " + path("exp.json"));
    CHECK(b.code == 0);
    CHECK(b.out.find("p,s,b,messages,n,ratio") != std::string::npos);
    CHECK(b.out.find("31,5,3,5,2,5") != std::string::npos);
    CHECK(b.out.find("31,5,3,2,2,10") != std::string::npos);

    {
        std::ofstream out(path("md.json"));
        out << R"([{"d":0,"seeds":["2","3"],"q":[0,1,2],"e":[3,1]}])";
    }
    Result m = run("bench mindegree --params " + path("md.json"));
    CHECK(m.code == 0);
    CHECK(m.out.find("d,n,esum,minDegree") != std::string::npos);
    CHECK(m.out.find("0,2,4,") != std::string::npos);
}
