// Correction nodes for the log-singular hybrid Gauss-trapezoidal rules.
// Regenerate with tools/gen_alpert.py J A.
#include "alpert_tables.hpp"

namespace bor::detail {

namespace {

const double kX2[] = {0.15915494309189533577};
const double kW2[] = {0.5};

const double kX6[] = {0.004004884194926569617659, 0.07745655373336686132424,
                      0.397284999352324859383, 1.075673352915103744318,
                      2.003796927111871943975};
const double kW6[] = {0.01671879691147101715107, 0.163695837144735970111,
                      0.4981856569770636544361, 0.8372266245578912202374,
                      0.9841730844088381380645};

const double kX10[] = {0.003107019385938388011926, 0.04455716825486832097857,
                       0.2048190557247784436773, 0.5708519470820365302368,
                       1.187525123882899131296, 2.026202605354986523167,
                       2.994609056353926565395, 3.998231593453354155595,
                       4.999933195320102947722};
const double kW10[] = {0.01177580073536208728615, 0.08523814397923742582812,
                       0.2506480321730766800167, 0.4894785822525980477378,
                       0.7389771816385580364524, 0.9218716289745559410034,
                       0.9978423114807828964616, 1.003858346779526987989,
                       1.000309971986301897225};

const double kX16[] = {0.0008371529832014113271564, 0.01239382725542636982475,
                       0.06009290785739467772077, 0.1805991249601927929276,
                       0.4142832599028030884011, 0.796474773111242984223,
                       1.348993882467058808928, 2.073471660264395027695,
                       2.947904939031493804757, 3.928129252248611745278,
                       4.957203086563111694871, 5.986360113977494222055,
                       6.997957704791519278242, 7.999888757524622397419,
                       8.999998754306119601289};
const double kW16[] = {0.003190919086626234406311, 0.02423621380426338019027,
                       0.07740135521653087933451, 0.1704889420286369087236,
                       0.3029123478511308610304, 0.4652220834914616653324,
                       0.6401489637096768365019, 0.8051212946181061154403,
                       0.936241194569864654425, 1.01435977536907516913,
                       1.035167721053656806352, 1.020308624984610370791,
                       1.004798397441513981572, 1.000395017352309274014,
                       1.000007149422536862757};

}  // namespace

const AlpertTable* alpert_table(int order) {
  static const AlpertTable t2{2, 1, 1, kX2, kW2};
  static const AlpertTable t6{6, 5, 3, kX6, kW6};
  static const AlpertTable t10{10, 9, 6, kX10, kW10};
  static const AlpertTable t16{16, 15, 10, kX16, kW16};
  switch (order) {
    case 2: return &t2;
    case 6: return &t6;
    case 10: return &t10;
    case 16: return &t16;
    default: return nullptr;
  }
}

}  // namespace bor::detail
