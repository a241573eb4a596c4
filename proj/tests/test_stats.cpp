#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "kge/stats.hpp"

using namespace kge;

namespace {

struct WelchCase {
  std::vector<double> a, b;
  double t, p;
};

// frozen oracle: scipy.stats.ttest_ind(a, b, equal_var=False)
const std::vector<WelchCase> kWelchCases = {
    {{-1.0899357356539425, 0.46042588616631036, 0.39685156311225067, 0.7274898850971235, -0.7212788161019601, -0.06175328377062565, -0.38837735656974687, -1.0740239664326892, -0.19963265679401243, 0.48663142639578333, 0.3629546078103257, 0.4796386961512437, 0.6833777118699514, 1.1494492964754914, -0.5884202704224665, 0.7601178895568732},
     {0.1294317664946834, 1.1285838436109217, -0.18957119300727182, 0.2220264923697482},
     -0.7129136637169441, 0.505011610898572},
    {{0.5325073609904388, -0.03338723594435917, -0.13302574605893905, -0.24441933487013054, -0.07490593123156522, -0.05723956794744044},
     {-0.49729482790302226, 2.833137529913582, 1.5711378240023035, 2.3094278868619997, -0.35766212951495757, -1.3935602200982962, 1.7488431117877319, 1.5784355218338715, 0.9481166128742948, 1.892834045834865, 0.9398800087907804, 1.9686968965109668, 4.261869827621174, -2.816954095577965, -0.1120638765241434},
     -2.102205771988952, 0.052216034924721356},
    {{-1.6510082625971925, -2.4398539296784056, -0.709086591103106, 1.2400562135560433, -1.1497617991344589, 1.1085176655799294, 1.45310504713885, -0.9163952987729557, -0.48487558684513865, 1.2614392394435532, -1.8909038132308855, -1.2392540309861162, -0.4268897645836103, -3.964583486201966, 1.4870304127700829},
     {-0.9434489694492281, 0.365130401913015, 0.6935316131122377, -0.08930811017609229, 0.15961097575439476, -0.5027299307044925, -0.24607090307734875, -0.9297732482940878, -0.843986476189959, 0.8054163186394686, 0.8311500529606393, -2.3874552743665123, 0.8244858526409204, -2.4971580530947595},
     -0.4203021938421317, 0.6778880956253021},
    {{1.2732876533849165, 1.7080542266455567, 0.2783371904542478, -0.2652508768943976, 0.6882032536651335, 2.2918313449806362, -0.8852619771315137, 1.2519621693211214, 1.5554324941382647},
     {2.897964554658861, 1.0555142546526293, -0.6514672413427063, -1.5759595189064424, -1.1845658141170692, -0.5314468073768139, 0.8934858452725083, -0.9670362779727435},
     1.4042614264548978, 0.18541177973264977},
    {{1.7273799390702334, 0.5812226085706759, 1.6810830388419147, 2.3379953043481985, -1.3403314216863516, 0.12895961695469033},
     {0.47652585553259347, 1.2680738830126295, -0.4979202961690379, 3.81706645990678, 2.5936000004327813, 2.9121433414265097},
     -1.0540281864101702, 0.3175162704438744},
    {{2.509373564265338, -0.74015724775206, -1.5351710729595873, -2.1010637903967924, 0.5436457902377295, -0.986599630143992, -0.7917058695999002, -2.7348262064226656, -0.04027535392693439, -0.6162036017539275, -0.22756352722467538, -0.699003286241765, 0.2150722702879974, -1.8684386649678804, 1.3224834427669971, -1.2506615134845611},
     {0.43859795148841313, -0.5258770463183378, -0.3347033750283844, -0.6025485632176765, 0.10968574620641813},
     -0.9917148087430544, 0.33405335029636885},
    {{-1.7443919164779182, -0.3249255266058861, 0.6223725855930933, -1.2599340127886827, -1.3056091851989065, 0.915658882929726, -0.7605687117251533, 0.04615748960612695, 2.08146046482485, 1.0678129423561877, -0.2890265649143145, 1.2184085205386495, 1.6823628323429554},
     {0.16109376976314693, 0.27859353708675716, -0.2096737201522395, 1.0553613726807014, 0.20292131881503292, -0.287831739927741, -0.4243013088466831, 0.6379209548396554},
     -0.07031590266835436, 0.9447536027317505},
    {{0.4213372128440786, -1.949933213921041, -0.9674982419184942, 0.46944536454115376, -0.6983050313308631, 0.02842640649380246, -1.0125812298125891, -2.8442321323520243, 0.3530563329118772, -1.4963865708923128, -0.8791687737012779, -0.08676649557586123, -0.39961937064697733, -2.0891718375533244, -1.7931032496335297},
     {1.7226970617313082, -0.11681153031311341, -0.9885354559038053, 2.710790572940254, -0.9559493969219355, 0.633422833187302, 0.17524024081938994, 1.2950034438137783, -0.5123397552259388, 2.499010374706801, 0.9682772208076922, -0.29660031023400074, 0.7780773594482698, 0.6444179613481336, -0.49411867270504833, -0.222174280782389},
     -3.5005915669292706, 0.0015248854595183157},
    {{0.7773992772013038, -1.766118388327926, -1.6745358929478242, -0.8997649648948307, -1.061150123214885, 1.287314320281333},
     {2.0638976777437525, 1.7443657537765984, -0.017683735428093317, -0.3607388658035442},
     -1.7536027861632948, 0.12405205364956502},
    {{0.004042909061547682, 0.7430961887640748, -0.5597926766310526, -1.9552870871633565, 0.7071697807123775, 0.34969736593856254},
     {-0.43464348251226675, -0.3170355975998172, 1.3956939737773504, -0.3850695686159234, -0.07015541971737255, -1.3978089683766448, 2.8871277618806035, 0.10834325235581704},
     -0.5447412405078359, 0.5959370585430123},
    {{0.4760993561551602, 0.45461904755423505, -1.2319898488146577, -0.2747731752994441, -0.2588124698593003, -0.29607218673468577, -0.7656732095814969, 0.526077880526737},
     {0.26172748579067884, 3.7100568670898717, 3.500384654340915, 1.57406860641561, 1.3984850510169595, 2.929056459496234, 2.6439656309650976, 0.57253686608599, 1.3248578700529876, 0.526780015239205, 3.733032459140502},
     -4.762478718496683, 0.0002467516514349051},
    {{0.7201026242390207, 0.6614966951252542, 0.1803274366105348, -1.2888322266161951, -0.9326421904048987, -0.20714452666333227},
     {1.0220223920074665, 2.1180639234739584, -0.7999747082139217, 0.4598300168100564, 1.3618717098957591, 2.7198900477140677, 1.0340088310907714, -2.5920391108291114, 0.28670884137936875, 1.2841014866459706, 0.1934623120770477, 0.28724168377643783, 2.172623482515459, -1.403877335327379, 0.378724668755119, 0.4223488547137192},
     -1.472484414088057, 0.16164045523609935},
    {{0.7646484172428553, -0.5320071276790028, -0.34451117724431707, -3.1213420105582235, 0.6743545223205292, -0.353903204092637, 2.6389814743612923, 0.39582069707136947, -1.065485917299268},
     {-1.0593198218805213, 1.045442474990647, -0.1477810735137579, 1.4063006860315506},
     -0.5418855722008498, 0.6025376724350728},
    {{-1.065804346586891, 0.28289288881486835, -1.7469998899026193, -0.0308783401269379},
     {-0.9292344670140797, 0.872692549457884, -0.3317071490021461, -0.0168693214550987, 0.9355097398638871, -1.8174645052404637, 1.8236703033780823, 1.915180388532099, 0.13391079886151597, 0.751785805018801, -1.2751748847058297, -0.6550656360214365, -1.174748763302236, 0.5020093907932086, 0.8487180162566937, 1.9509005222108895, 1.901766163396357},
     -1.7358517099341673, 0.13608378193592668},
    {{0.45520775505713745, 0.0796295817628814, 1.3291512525290146, 0.9463633269075702, 1.0869462546048043, -0.1331121272387006, -0.497896634602362, -0.9285004190091062, -1.1686673990005298, -1.3077480451423218, 0.2714722502433152},
     {0.8464266437324366, 0.07753301588772461, -1.4991966308123055, 2.0083701096303965, 0.6558904568073979, 0.7702666885146411, 2.034980386240163, -0.5077398487752591, -1.1921697772656163},
     -0.6825282386087075, 0.5058571208687674},
    {{-1.4556504622916857, -2.364848574802764, 1.3278534422371855, 0.06673353539202954, 0.8140468961312785, 2.0619535846761634},
     {-0.5585164530384755, -1.7326460148415799, 1.9319326286557506, -1.362741265763103, 1.4462879291051889, -1.4289126097556353, -1.6856815686727038, -0.03556769759624184, 2.27956436523903, 0.02687902268420567, -0.3735338703381846, -1.8139323110078167, -0.9082054545938295, 1.6665790086271457, 1.1329638187201907},
     0.21546782340663884, 0.8347358989019007},
    {{-0.5089356032261353, -2.4462411704206732, 0.3081012782995136, 0.021389749548002088, -0.7288737572188715, 0.40805137089356425, -0.1636990376398142, 1.346890772101933, 0.4008001275441745},
     {0.7523254798602103, -1.748004885616697, 0.3077362627242139, -0.38671292937451884, -1.2583194715535833, -1.929812920365001, 4.396780008026118, 3.771566433047367, 3.7613446443017873, 0.6731820802494046, 2.946072419019157, -1.7852925387987237, 1.8136002989803557, 2.3673467841703677, 0.35507213452825864},
     -1.6530051345674925, 0.11292212107624572},
    {{1.5450215496751964, -0.3565609156738038, -0.12236681470126363, 0.7461073769612662, -0.1303658988219449, -0.5422620785801382},
     {-0.5042175052956845, 0.09145353187743344, 2.373264700768104, 2.204954812965135, 1.6807952782653488, -0.6176905938373694, 2.473136195252872, 1.8523476933571812, -0.8577002926534323, 1.822751441074981, -1.0656666882907786, -1.403175854997879, 1.7510135193508822, -0.5771208942919102},
     -0.9199541306624414, 0.3707751219849613},
    {{-2.25193885541609, 0.7542552772110552, 1.794507287186832, -1.3731124943791808, -0.9000064886513586, 1.0846825507827944, 0.9039336242238367, -0.029987021945443757, 1.3996693934765514, -1.0388994633498425},
     {1.8647386126673728, 0.9741966330959972, 1.7520830413645492, 1.2891663476413742},
     -3.0133363612838364, 0.01101328776408613},
    {{0.16420231358055168, -2.1140553226373626, -1.8974737542246805, 1.6443403575253008, 0.8134873650275422, 1.7905198279372803, -1.497877102438533, 0.9681602176078353, -0.5021693122243687, -1.9564946722657068, -0.738637497607721, -1.4567066333342824, -1.8329821500567576, -1.668344858917263, 0.9065594843939062, 1.362324170796536},
     {2.8212633807535754, 2.347601248261488, 1.2156900608679884, 1.9647223899994972, 1.7312545849095675, 1.4442738168421965, 3.0540434537077674, 1.4044254460221808, 2.1369374802718193, 2.2879739526123064, 1.0452270185468762, 2.7997949104166295, 1.959373617447347, 1.2287716128708361},
     -5.840863543563992, 7.822883375700484e-06},
};

}  // namespace

TEST_CASE("incomplete beta basics") {
  CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  // I_x(1,1) = x
  for (double x : {0.1, 0.25, 0.5, 0.9})
    CHECK(incomplete_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-12));
  // I_x(a,b) + I_{1-x}(b,a) = 1
  CHECK(incomplete_beta(2.5, 4.0, 0.3) + incomplete_beta(4.0, 2.5, 0.7) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS(incomplete_beta(0.0, 1.0, 0.5));
  CHECK_THROWS(incomplete_beta(1.0, 1.0, -0.1));
}

TEST_CASE("student t two-sided tail probabilities") {
  // dof=1 is a Cauchy: P(|T| >= 1) = 1/2
  CHECK(student_t_two_sided_p(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(student_t_two_sided_p(0.0, 7.0) == doctest::Approx(1.0).epsilon(1e-12));
  // symmetric in t
  CHECK(student_t_two_sided_p(-2.3, 11.0) ==
        doctest::Approx(student_t_two_sided_p(2.3, 11.0)).epsilon(1e-14));
  // monotone decreasing in |t|
  CHECK(student_t_two_sided_p(3.0, 9.0) < student_t_two_sided_p(1.0, 9.0));
}

TEST_CASE("welch t-test matches the frozen oracle") {
  for (std::size_t i = 0; i < kWelchCases.size(); ++i) {
    CAPTURE(i);
    const WelchCase& c = kWelchCases[i];
    TTestResult r = welch_ttest(c.a, c.b);
    CHECK(std::abs(r.t_statistic - c.t) <= 1e-9);
    CHECK(std::abs(r.p - c.p) <= 1e-6);
    CHECK(r.h == (c.p < 0.05 ? 1 : 0));
  }
}

TEST_CASE("welch t-test structural properties") {
  std::vector<double> a{0.3, 0.5, 0.4, 0.45};
  std::vector<double> b{0.9, 1.1, 1.0, 1.05, 0.95};

  // identical samples: t = 0, p = 1, h = 0
  TTestResult same = welch_ttest(a, a);
  CHECK(same.t_statistic == 0.0);
  CHECK(same.p == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(same.h == 0);

  // symmetry: swapping the samples flips t and keeps p
  TTestResult ab = welch_ttest(a, b);
  TTestResult ba = welch_ttest(b, a);
  CHECK(ab.t_statistic == doctest::Approx(-ba.t_statistic).epsilon(1e-14));
  CHECK(ab.p == doctest::Approx(ba.p).epsilon(1e-14));
  CHECK(ab.h == ba.h);

  // shift invariance: adding the same constant to both samples changes nothing
  std::vector<double> a2 = a, b2 = b;
  for (double& v : a2) v += 3.25;
  for (double& v : b2) v += 3.25;
  TTestResult shifted = welch_ttest(a2, b2);
  CHECK(shifted.t_statistic == doctest::Approx(ab.t_statistic).epsilon(1e-10));
  CHECK(shifted.p == doctest::Approx(ab.p).epsilon(1e-10));

  // degenerate inputs
  CHECK_THROWS(welch_ttest({1.0}, b));
  CHECK_THROWS(welch_ttest(a, {}));
  CHECK_THROWS(welch_ttest({1.0, 1.0}, {2.0, 2.0}));  // both variances zero
}

TEST_CASE("aggregate examples") {
  Aggregate two = aggregate({0.35, 0.37});
  CHECK(two.mean == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(two.stddev == doctest::Approx(std::sqrt(2e-4 / 1.0)).epsilon(1e-12));
  CHECK_FALSE(two.degenerate);
  CHECK(two.n == 2);

  Aggregate one = aggregate({0.5});
  CHECK(one.mean == 0.5);
  CHECK(one.stddev == 0.0);
  CHECK(one.degenerate);

  Aggregate flat = aggregate({0.2, 0.2, 0.2});
  CHECK(flat.stddev <= 1e-12);  // fp noise only (mean of 3 equal doubles rounds)
  CHECK_FALSE(flat.degenerate);

  CHECK_THROWS(aggregate({}));
}

TEST_CASE("mean-std cell formats compactly") {
  Aggregate a;
  a.mean = 0.3662;
  a.stddev = 4.2e-4;
  a.n = 17;
  CHECK(format_mean_std(a) == "0.366±4e-04");
  a.degenerate = true;
  a.stddev = 0.0;
  CHECK(format_mean_std(a).substr(0, 5) == "0.366");
}

TEST_CASE("report rendering") {
  RunSet r1{"full", {{0.95, 0.9, 0.96, 0.99, 1.2}, {0.94, 0.89, 0.95, 0.98, 1.21},
                     {0.96, 0.91, 0.97, 0.99, 1.19}}};
  RunSet r2{"conj", {{0.90, 0.85, 0.91, 0.95, 0.8}, {0.91, 0.86, 0.92, 0.96, 0.79},
                     {0.89, 0.84, 0.90, 0.94, 0.81}}};
  PairTest pt;
  pt.label_a = "full";
  pt.label_b = "conj";
  pt.metric = "mrr";
  std::vector<double> m1, m2;
  for (const auto& s : r1.samples) m1.push_back(s.mrr);
  for (const auto& s : r2.samples) m2.push_back(s.mrr);
  pt.result = welch_ttest(m1, m2);

  std::string text = render_report_text({r1, r2}, {pt});
  CHECK(text.find("full") != std::string::npos);
  CHECK(text.find("conj") != std::string::npos);
  CHECK(text.find("MRR") != std::string::npos);
  CHECK(text.find('*') != std::string::npos);  // best-mean marker present

  std::string js = render_report_json({r1, r2}, {pt});
  CHECK(js.find("\"format_version\"") != std::string::npos);
  CHECK(js.find("\"mrr\"") != std::string::npos);

  // empty pairwise matrix renders dashes, not garbage
  std::string no_tests = render_report_text({r1, r2}, {});
  CHECK(no_tests.find("full") != std::string::npos);
}

TEST_CASE("aggregate_runs covers every metric key") {
  RunSet rs{"x", {{0.5, 0.4, 0.55, 0.6, 2.0}, {0.52, 0.42, 0.56, 0.62, 2.1}}};
  MetricAggregates agg = aggregate_runs(rs);
  for (const char* key : {"mrr", "hits1", "hits3", "hits10", "time"}) {
    CAPTURE(key);
    CHECK(agg.by_metric.count(key) == 1);
    CHECK(agg.by_metric.at(key).n == 2);
  }
  CHECK(agg.by_metric.at("time").mean == doctest::Approx(2.05).epsilon(1e-12));
}
