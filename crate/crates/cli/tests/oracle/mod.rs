//! High-precision reference values, generated once with mpmath at 40 digits
//! and frozen here.
#![allow(dead_code, clippy::excessive_precision)]
/// Scattered field of the unit sound-soft disk under the plane wave along
/// (0.6, 0.8) at k = 5, at the points 5·(cos 2πi/64, sin 2πi/64).
pub const MIE_K5: [(f64, f64); 64] = [
    (2.2340646339677104726e-1, -1.8889201096304472905e-1),
    (3.0235668758567410644e-1, -7.0423694443323687801e-2),
    (3.1636376937779715173e-1, 7.1358264492316821715e-2),
    (2.5355674570113508658e-1, 2.1013434658114574475e-1),
    (1.1652457813053560282e-1, 3.2221548114746165137e-1),
    (-7.7051528045752510961e-2, 3.9310761001615942412e-1),
    (-2.9710031156924044478e-1, 4.21207915581467088e-1),
    (-5.0669724836352346735e-1, 4.1718667740626057238e-1),
    (-6.6924689402883758702e-1, 3.9912858796677128429e-1),
    (-7.5575101981355012732e-1, 3.8512243215320578906e-1),
    (-7.5061131990395821826e-1, 3.8603285504097979796e-1),
    (-6.54757401185886736e-1, 4.0119192253976166273e-1),
    (-4.8546030167360463309e-1, 4.1866355339824589628e-1),
    (-2.7286942942858701867e-1, 4.1997898650224786368e-1),
    (-5.3982303825823705647e-2, 3.8752804960847334101e-1),
    (1.3469301059349628234e-1, 3.1181263033127840178e-1),
    (2.6421286256105616105e-1, 1.9589759525092810511e-1),
    (3.1847272849418664711e-1, 5.5530391974089810125e-2),
    (2.9655471235617144932e-1, -8.4961695375040519848e-2),
    (2.1173595212270354158e-1, -1.9941688704089021024e-1),
    (8.7578331962745109285e-2, -2.6688201320939501036e-1),
    (-4.7776913934743935173e-2, -2.7675103647717517093e-1),
    (-1.6762503898941607032e-1, -2.3067365263253498096e-1),
    (-2.5161497650032618903e-1, -1.4109691596673207872e-1),
    (-2.8861241955827270809e-1, -2.7336668795695527305e-2),
    (-2.772048406955910872e-1, 8.9366294472618451223e-2),
    (-2.2417129825660637798e-1, 1.9035340937685849878e-1),
    (-1.4166293966594807225e-1, 2.6260255117160245131e-1),
    (-4.397921746328683501e-2, 2.9993761168568307267e-1),
    (5.5294441835094538192e-2, 3.0257382909667135874e-1),
    (1.4530155922818813266e-1, 2.7554241815354247181e-1),
    (2.1891716801818664625e-1, 2.2664904742245379772e-1),
    (2.7283872554023919214e-1, 1.6452785357819935838e-1),
    (3.0702545040803908395e-1, 9.714955549673454468e-2),
    (3.2379437760553633276e-1, 3.092204151068947381e-2),
    (3.2684503479721568977e-1, -2.9651495979301065728e-2),
    (3.2040255829965023923e-1, -8.1891832045609668704e-2),
    (3.0857701741727251196e-1, -1.2460626975281259572e-1),
    (2.9495889155469372963e-1, -1.5764320159141576991e-1),
    (2.8241813501804243805e-1, -1.8144685639167046295e-1),
    (2.730478534266808807e-1, -1.9667653477241866015e-1),
    (2.6818818283865744171e-1, -2.0391938619993516045e-1),
    (2.6847450151089588349e-1, -2.0350365323222835317e-1),
    (2.7387039480446154003e-1, -1.954096037488563614e-1),
    (2.8366557821011886251e-1, -1.7927464238657125296e-1),
    (2.9643993087396686839e-1, -1.5449284265562588893e-1),
    (3.1001568227946463418e-1, -1.2041263135843328107e-1),
    (3.2143934058022763977e-1, -7.6634856081523100697e-2),
    (3.2705064032071577075e-1, -2.3402540229723450864e-2),
    (3.2270313103696503271e-1, 3.7949968605232032503e-2),
    (3.0419363797419707309e-1, 1.0455728145257496483e-1),
    (2.6792874363172572705e-1, 1.7170575476549383507e-1),
    (2.1180097480461278705e-1, 2.3279093268274882018e-1),
    (1.3616723834491091076e-1, 2.7971493882591400903e-1),
    (4.4729668751406501742e-2, 3.0385147274418828721e-1),
    (-5.4959934868782376713e-2, 2.9759779093433918947e-1),
    (-1.5167987331166295867e-1, 2.563526869696658111e-1),
    (-2.3165083098739928754e-1, 1.8053738084927588187e-1),
    (-2.8065702845743587742e-1, 7.708028746527104302e-2),
    (-2.8697751607155330994e-1, -4.0288110336933169486e-2),
    (-2.4460698412433186547e-1, -1.5244655501218613395e-1),
    (-1.5597736943820014455e-1, -2.381266531974854155e-1),
    (-3.3296623144739049277e-2, -2.7852765597098060076e-1),
    (1.0220836788214274041e-1, -2.6222449034143260326e-1),
];

/// Scattered field of the unit sound-soft disk under the plane wave along
/// (0.6, 0.8) at k = 25, at the points 5·(cos 2πi/64, sin 2πi/64).
pub const MIE_K25: [(f64, f64); 64] = [
    (7.052945144053157525e-2, 2.1006893964071205065e-1),
    (-1.95092382746880495e-1, -9.4627842728973290325e-2),
    (2.0664458280952522087e-1, -6.4399126796176131721e-2),
    (-1.1886055453732016983e-1, 1.8923316425140424051e-1),
    (-2.3880811987238424525e-2, -2.3845697948577719126e-1),
    (1.8206280539548861238e-1, 1.9784136815365904733e-1),
    (-3.2823509364690906308e-1, -3.5824258817522921651e-2),
    (3.2853095769983533424e-1, -3.5770604352108395725e-1),
    (4.1854994119612370898e-1, 7.0845738429981272409e-1),
    (-7.4387614239497877181e-1, 7.7607045363205082253e-1),
    (-6.3945261266818833626e-1, 8.13690881200774996e-1),
    (5.0438544717610987609e-1, 6.0873629248247405529e-1),
    (2.2606306258450098095e-1, -4.1401743040109503639e-1),
    (-3.1272509902609257327e-1, 5.4176669754535604452e-2),
    (2.2074127256826970424e-1, 1.3689848456090331268e-1),
    (-8.3411005939994687952e-2, -2.206918629247450125e-1),
    (-6.5891085258133585693e-2, 2.1342493809309405502e-1),
    (1.8343610306648178337e-1, -1.1658441809898159661e-1),
    (-2.1345181689286726715e-1, -4.0995527907947470032e-2),
    (1.2135112319157276724e-1, 1.8570738969091596842e-1),
    (6.1178814881479697087e-2, -2.2001920654217417652e-1),
    (-2.1735084746920139259e-1, 9.023771045811015676e-2),
    (2.0326709919007456797e-1, 1.322950379223843791e-1),
    (1.1512933149576366099e-2, -2.498887879556417651e-1),
    (-2.3647483983306947804e-1, 1.0330186950431820949e-1),
    (1.8915517022296119401e-1, 1.8675694423752886862e-1),
    (1.268910694085563498e-1, -2.4202113564538579326e-1),
    (-2.6985711997532430836e-1, -7.6357475753476260513e-2),
    (-4.639778231652731626e-2, 2.8354742944848541378e-1),
    (2.9059005187744382062e-1, 4.3046743103719497121e-2),
    (6.983054408681151236e-2, -2.9151713100691389317e-1),
    (-2.7744624785992921929e-1, -1.274624879258524191e-1),
    (-2.0880300082574473714e-1, 2.2967970229995462077e-1),
    (1.2564088764774357846e-1, 2.8885733320923097549e-1),
    (3.1634496510966090992e-1, 4.183405978431797677e-2),
    (2.3047572975406895814e-1, -2.2585830756639754888e-1),
    (4.530023395863818938e-3, -3.2574866080095978917e-1),
    (-1.9611036407975420291e-1, -2.6335582669455895331e-1),
    (-3.0348778125510772256e-1, -1.306343157791121815e-1),
    (-3.3191517536142604664e-1, -4.5267421415081070287e-3),
    (-3.2289668123199219544e-1, 8.1249803115369016423e-2),
    (-3.1051155847598615424e-1, 1.2155490377011457387e-1),
    (-3.1136669595715991461e-1, 1.1926755469701217444e-1),
    (-3.2451833685830766664e-1, 7.4125696035316148952e-2),
    (-3.3138647410934616434e-1, -1.6627559087251317945e-2),
    (-2.962651088992387686e-1, -1.4582651137278470183e-1),
    (-1.7839640115933568128e-1, -2.7535818871132732696e-1),
    (3.0277421112641704561e-2, -3.2405646558269991586e-1),
    (2.5018126111820504175e-1, -2.0323085325699014055e-1),
    (3.0968859067539063388e-1, 7.5146865298047784093e-2),
    (9.0095778106124616815e-2, 3.0134042882627895973e-1),
    (-2.369197740319292198e-1, 1.9972508638764532488e-1),
    (-2.5563668273022303745e-1, -1.6588280416580244173e-1),
    (1.1428523867330763379e-1, -2.7643627221609273449e-1),
    (2.7861296846656758631e-1, 9.0925963200700887422e-2),
    (-9.5999728380730232413e-2, 2.7003666531516358511e-1),
    (-2.4990767619490171942e-1, -1.2557663438314995436e-1),
    (1.7188703145050624919e-1, -2.1138360793645928976e-1),
    (1.4580548432804866014e-1, 2.2125936106505508102e-1),
    (-2.5242244870715088895e-1, 4.9546299729093566968e-2),
    (6.7116545725118096162e-2, -2.4009871264885186337e-1),
    (1.6640285566415246397e-1, 1.7515971182654375874e-1),
    (-2.3176625804890663554e-1, 3.5735182758409214513e-2),
    (1.1290320129808660454e-1, -1.9794024085222194562e-1),
];

/// First five positive zeros of J0.
pub const ZEROS_J0: [f64; 5] = [
    2.404825557695772768621632,
    5.520078110286310649596604,
    8.653727912911012216954199,
    11.79153443901428161374304,
    14.93091770848778594776259,
];

/// First five positive zeros of J1.
pub const ZEROS_J1: [f64; 5] = [
    3.831705970207512315614436,
    7.01558666981561875353705,
    10.17346813506272207718571,
    13.32369193631422303239368,
    16.47063005087763281255246,
];

/// First five positive zeros of Y0.
pub const ZEROS_Y0: [f64; 5] = [
    0.8935769662791675215848871,
    3.957678419314857868375677,
    7.086051060301772697623625,
    10.22234504349641701899204,
    13.36109747387276347826769,
];

/// First five positive zeros of Y1.
pub const ZEROS_Y1: [f64; 5] = [
    2.197141326031017035149034,
    5.429681040794135132772005,
    8.596005868331168926429606,
    11.74915483083988124339942,
    14.89744212833672537884482,
];
