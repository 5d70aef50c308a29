// Embedded corpus of benchmark lattices with their known facts.
//
// Names encode the shape and the Go-equation behavior: e.g.
// "26-18-p8go-f9go-a" is a 26-atom, 18-block diagram that passes 8-Go and
// fails 9-Go.  The facts stored here are reproduced by `corpus verify`.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "greechie.hpp"

namespace omlkit {

enum class CorpusErrc { UnknownCorpusName };

class CorpusError : public std::runtime_error {
  public:
    CorpusError(CorpusErrc code, const std::string& what)
        : std::runtime_error(what), code_(code)
    {
    }
    CorpusErrc code() const { return code_; }

  private:
    CorpusErrc code_;
};

struct CorpusEntry {
    enum class StateFact { Unspecified, NotStrong, NoState };

    std::string name;
    std::string notation;
    std::string note;
    std::optional<int> go_first_fail;   // nullopt: every n-Go passes (scan converges)
    std::optional<bool> e3_holds, e4_holds;
    StateFact state_fact = StateFact::Unspecified;

    GreechieDiagram diagram() const { return parse_diagram(notation); }
};

inline const std::vector<CorpusEntry>& corpus()
{
    static const std::vector<CorpusEntry> entries = {
        {"peterson", "123,345,567,789,9AB,BC1,2E8,4FA,6DC,DEF.",
         "15 atoms in 10 blocks; passes 3-Go, fails 4-Go; admits states but no strong set",
         4, std::nullopt, std::nullopt, CorpusEntry::StateFact::NotStrong},
        {"23-16-p7go-f8go-a",
         "123,345,567,789,9AB,BCD,DEF,FGH,HI1,2NE,4JD,6KC,IJ8,GL9,NMA,2LK.",
         "23 atoms in 16 blocks; passes 7-Go, fails 8-Go", 8, true, true,
         CorpusEntry::StateFact::NotStrong},
        {"26-18-p8go-f9go-a",
         "123,345,567,789,9AB,BCD,DEF,FGH,HIJ,JKL,LMN,NO1,KP8,4PG,JQA,OE6,KD2,MC5.",
         "26 atoms in 18 blocks; passes 8-Go, fails 9-Go", 9, true, true,
         CorpusEntry::StateFact::NotStrong},
        {"26-18-p9go-f10go-a",
         "123,345,567,789,9AB,BCD,DEF,FGH,HIJ,JKL,LMN,NO1,KQ8,4QE,1PA,6PF,O8G,2KC.",
         "26 atoms in 18 blocks; passes 9-Go, fails 10-Go", 10, true, true,
         CorpusEntry::StateFact::NotStrong},
        {"26-18-p9go-f10go-b",
         "123,345,567,789,9AB,BCD,DEF,FGH,HIJ,JKL,LMN,NO1,2PG,IQC,7QP,HO8,K2B,M4A.",
         "26 atoms in 18 blocks; passes 9-Go, fails 10-Go; also violates E3", 10, false,
         true, CorpusEntry::StateFact::NotStrong},
        {"28-20-p10go-f11go-a",
         "123,345,567,789,9AB,BCD,DEF,FGH,HIJ,JKL,LMN,NO1,MGA,IOB,L4E,KP6,IS5,2QA,PRC,QSR.",
         "28 atoms in 20 blocks; passes 10-Go, fails 11-Go; also violates E3", 11, false,
         true, CorpusEntry::StateFact::NotStrong},
        {"28-20-p11go-f12go-a",
         "123,345,567,789,9AB,BCD,DEF,FGH,HIJ,JKL,LMN,NO1,CO6,I2B,L4A,KSE,MPQ,QRC,2PS,7PG.",
         "28 atoms in 20 blocks; passes 11-Go, fails 12-Go", 12, true, true,
         CorpusEntry::StateFact::NotStrong},
        {"mayet-30-19",
         "123,456,789,ABC,DEF,GHI,JKL,MNO,PQR,STU,147S,ADGT,JMPU,3CL,6FO,9IR,2EQ,5HK,8BN.",
         "30 atoms in 19 blocks, three of size 4; admits no states; every n-Go passes",
         std::nullopt, true, true, CorpusEntry::StateFact::NoState},
    };
    return entries;
}

inline const CorpusEntry& corpus_get(std::string_view name)
{
    for (const auto& e : corpus())
        if (e.name == name) return e;
    throw CorpusError(CorpusErrc::UnknownCorpusName,
                      "unknown corpus lattice '" + std::string(name) + "'");
}

}   // namespace omlkit
