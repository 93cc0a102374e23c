// Reference values generated with mpmath (50 digits).
// (nu, z, ln|D_nu(z)|, sign)
pub const PCF_D_REFERENCE: &[(f64, f64, f64, f64)] = &[
    (-60.0, -80.0, 1675.1896580171351028, 1.0),
    (-60.0, -10.0, -11.022207721037351441, 1.0),
    (-60.0, -3.0, -69.898508446626898873, 1.0),
    (-60.0, -0.5, -89.318228840628715508, 1.0),
    (-60.0, 0.0, -93.175521658043067519, 1.0),
    (-60.0, 0.7, -98.577520028448970318, 1.0),
    (-60.0, 2.0, -108.65030802026059685, 1.0),
    (-60.0, 5.0, -132.43416032460999909, 1.0),
    (-60.0, 10.0, -175.50420783473518647, 1.0),
    (-60.0, 30.0, -430.98017288526396734, 1.0),
    (-60.0, 80.0, -1863.2048313095119852, 1.0),
    (-20.5, -80.0, 1645.5650616236351896, 1.0),
    (-20.5, -10.0, 31.537479811603516098, 1.0),
    (-20.5, -3.0, -7.4127870041583658564, 1.0),
    (-20.5, -0.5, -18.815065351364948031, 1.0),
    (-20.5, 0.0, -21.051865882875257702, 1.0),
    (-20.5, 0.7, -24.187562777508034806, 1.0),
    (-20.5, 2.0, -30.083614160973458126, 1.0),
    (-20.5, 5.0, -44.598245779697216512, 1.0),
    (-20.5, 10.0, -74.046508684397988951, 1.0),
    (-20.5, 30.0, -294.96365787328141997, 1.0),
    (-20.5, 80.0, -1689.8658619246470337, 1.0),
    (-5.3, -80.0, 1616.1231251022855831, 1.0),
    (-5.3, -10.0, 32.249459387913371867, 1.0),
    (-5.3, -3.0, 4.8704282269925796999, 1.0),
    (-5.3, -0.5, -1.0028896188911407881, 1.0),
    (-5.3, 0.0, -2.1003986614028380794, 1.0),
    (-5.3, 0.7, -3.6506193573587807979, 1.0),
    (-5.3, 2.0, -6.6855613793765443106, 1.0),
    (-5.3, 5.0, -15.321138901024235309, 1.0),
    (-5.3, 10.0, -37.360480999840346486, 1.0),
    (-5.3, 30.0, -243.0447578091408078, 1.0),
    (-5.3, 80.0, -1623.22734699109047, 1.0),
    (-1.0, -80.0, 1600.9189385332046727, 1.0),
    (-1.0, -10.0, 25.918938533204672742, 1.0),
    (-1.0, -3.0, 3.167587723239924548, 1.0),
    (-1.0, -0.5, 0.61249211791601634871, 1.0),
    (-1.0, 0.0, 0.22579135264472743236, 1.0),
    (-1.0, 0.7, -0.3775292283268588531, 1.0),
    (-1.0, 2.0, -1.8642458004773592071, 1.0),
    (-1.0, 5.0, -7.8960598607840529943, 1.0),
    (-1.0, 10.0, -27.312346617307797837, 1.0),
    (-1.0, 30.0, -228.40230542313852437, 1.0),
    (-1.0, 80.0, -1604.3821828236857208, 1.0),
    (-0.5, -80.0, 1598.1556188850153919, 1.0),
    (-0.5, -10.0, 24.199109346273515317, 1.0),
    (-0.5, -3.0, 2.1054893852387314615, 1.0),
    (-0.5, -0.5, 0.41129850019938002494, 1.0),
    (-0.5, 0.0, 0.19579719635341838824, 1.0),
    (-0.5, 0.7, -0.20556097140372553698, 1.0),
    (-0.5, 2.0, -1.4146160857275579917, 1.0),
    (-0.5, 5.0, -7.0686795722773119466, 1.0),
    (-0.5, 10.0, -26.154970463240540229, 1.0),
    (-0.5, 30.0, -226.70101443578675845, 1.0),
    (-0.5, 80.0, -1602.1910718927881843, 1.0),
    (-0.1, -80.0, 1594.7225355541490153, 1.0),
    (-0.1, -10.0, 21.602665038125400039, 1.0),
    (-0.1, -3.0, 0.14754952571525455164, 1.0),
    (-0.1, -0.5, 0.067085633189530608453, 1.0),
    (-0.1, 0.0, 0.057676727785576824434, 1.0),
    (-0.1, 0.7, -0.13032144113592920249, 1.0),
    (-0.1, 2.0, -1.0798254442528443318, 1.0),
    (-0.1, 5.0, -6.4130193066738804966, 1.0),
    (-0.1, 10.0, -25.230800000832476941, 1.0),
    (-0.1, 30.0, -225.34018074105406898, 1.0),
    (-0.1, 80.0, -1600.4382112550701211, 1.0),
    (0.3, -80.0, 1593.757697553304985, -1.0),
    (0.3, -10.0, 21.476131118563547469, -1.0),
    (0.3, -3.0, 0.47386497135967879638, -1.0),
    (0.3, -0.5, -0.66175684421717599206, 1.0),
    (0.3, 0.0, -0.25824420713754066044, 1.0),
    (0.3, 0.7, -0.13254422548763898808, 1.0),
    (0.3, 2.0, -0.77080775610243990412, 1.0),
    (0.3, 5.0, -5.7631505460944390048, 1.0),
    (0.3, 10.0, -24.308186725924981764, 1.0),
    (0.3, 30.0, -223.9795242738959195, 1.0),
    (0.3, 80.0, -1598.6853756064226266, 1.0),
    (1.0, -80.0, -1595.6179733653261184, -1.0),
    (1.0, -10.0, -22.697414907005954316, -1.0),
    (1.0, -3.0, -1.1513877113318903086, -1.0),
    (1.0, -0.5, -0.75564718055994530942, -1.0),
    (1.0, 0.7, -0.47917494393873242681, 1.0),
    (1.0, 2.0, -0.30685281944005469058, 1.0),
    (1.0, 5.0, -4.6405620875658996254, 1.0),
    (1.0, 10.0, -22.697414907005954316, 1.0),
    (1.0, 30.0, -221.59880261833784462, 1.0),
    (1.0, 80.0, -1595.6179733653261184, 1.0),
    (2.5, -80.0, 1585.6393204597594215, -1.0),
    (2.5, -10.0, 17.999229793766587506, -1.0),
    (2.5, -3.0, -0.059500710630618992788, -1.0),
    (2.5, -0.5, -2.2702121050596577232, 1.0),
    (2.5, 0.0, -0.13690567852522666097, -1.0),
    (2.5, 0.7, 0.12539954828993691685, -1.0),
    (2.5, 2.0, 0.088025502861387493346, 1.0),
    (2.5, 5.0, -2.3045647666747156173, 1.0),
    (2.5, 10.0, -19.262477146923868781, 1.0),
    (2.5, 30.0, -216.49909219721314701, 1.0),
    (2.5, 80.0, -1589.0452264278506059, 1.0),
    (7.0, -80.0, -1569.329097630878144, -1.0),
    (7.0, -10.0, -9.1045542722103124535, -1.0),
    (7.0, -3.0, 3.7314142112544805457, 1.0),
    (7.0, -0.5, 3.6269652200195851213, 1.0),
    (7.0, 0.7, 3.5894149798598183059, -1.0),
    (7.0, 2.0, 3.4543472962535077329, 1.0),
    (7.0, 5.0, 3.8806231251198752543, 1.0),
    (7.0, 10.0, -9.1045542722103124535, 1.0),
    (7.0, 30.0, -201.21509562368262237, 1.0),
    (7.0, 80.0, -1569.329097630878144, 1.0),
    (20.7, -80.0, 1548.9727177114971496, -1.0),
    (20.7, -10.0, 22.720618585308045912, -1.0),
    (20.7, -3.0, 20.699062849973864355, -1.0),
    (20.7, -0.5, 21.321161978938163731, -1.0),
    (20.7, 0.0, 20.564754802143454887, 1.0),
    (20.7, 0.7, 20.707162075754777439, -1.0),
    (20.7, 2.0, 19.665876269513253489, -1.0),
    (20.7, 5.0, 20.28364566225936875, -1.0),
    (20.7, 10.0, 20.022017218371809021, 1.0),
    (20.7, 30.0, -154.82677322895626602, 1.0),
    (20.7, 80.0, -1509.3240033027575983, 1.0),
    (33.0, -80.0, -1455.4760304331670992, -1.0),
    (33.0, -10.0, 41.470773354530337908, 1.0),
    (33.0, -3.0, 41.547697539219747354, 1.0),
    (33.0, -0.5, 40.13376016481916173, -1.0),
    (33.0, 0.7, 41.29920102417525479, -1.0),
    (33.0, 2.0, 41.400453330207373624, -1.0),
    (33.0, 5.0, 40.227797808052326867, 1.0),
    (33.0, 10.0, 41.470773354530337908, -1.0),
    (33.0, 30.0, -113.36896164735366032, 1.0),
    (33.0, 80.0, -1455.4760304331670992, 1.0),
    (59.5, -80.0, 1521.5340614008216496, 1.0),
    (59.5, -10.0, 90.730929962890276225, -1.0),
    (59.5, -3.0, 92.111834207551192259, -1.0),
    (59.5, -0.5, 92.151736919869983805, -1.0),
    (59.5, 0.0, 91.806394830461700037, 1.0),
    (59.5, 0.7, 92.150483873567225518, 1.0),
    (59.5, 2.0, 92.011646735087246617, -1.0),
    (59.5, 5.0, 91.321054204397245801, 1.0),
    (59.5, 10.0, 92.264922683660194399, -1.0),
    (59.5, 30.0, -24.702518688455585856, 1.0),
    (59.5, 80.0, -1339.5438509062950997, 1.0),
];
// (m, z, scaled value)
pub const PCF_SCALED_REFERENCE: &[(f64, f64, f64)] = &[
    (0.0, 0.05, 0.26563463317222567245),
    (0.0, 0.3, 0.58374592180940927034),
    (0.0, 1.0, 0.83856108120975600722),
    (0.0, 3.0, 0.96556048080552492153),
    (0.0, 8.0, 0.99432908304935723008),
    (0.0, 25.0, 0.99940208627341663527),
    (0.0, 100.0, 0.99996250819974327127),
    (0.0, 1000.0, 0.99999962500082030912),
    (0.25, 0.05, 0.12843617843631668852),
    (0.25, 0.3, 0.42415356148079699538),
    (0.25, 1.0, 0.74713848155760137812),
    (0.25, 3.0, 0.94155141911541629842),
    (0.25, 8.0, 0.99013243140386811255),
    (0.25, 25.0, 0.99895430002968108602),
    (0.25, 100.0, 0.99993439191124869946),
    (0.25, 1000.0, 0.99999934375169188683),
    (1.0, 0.05, 0.012343553197582736083),
    (1.0, 0.3, 0.14204655213763097933),
    (1.0, 1.0, 0.48569858038557478885),
    (1.0, 3.0, 0.84915288010373796254),
    (1.0, 8.0, 0.97235590350596448449),
    (1.0, 25.0, 0.99701872208131758385),
    (1.0, 100.0, 0.9998125737841707612),
    (1.0, 1000.0, 0.99999812500738276851),
    (2.0, 0.05, 0.00042215179995773827415),
    (2.0, 0.3, 0.026501962180306695499),
    (2.0, 1.0, 0.23524166721612081225),
    (2.0, 3.0, 0.69844560421072175392),
    (2.0, 8.0, 0.93752232718475714519),
    (2.0, 25.0, 0.99306841337460475821),
    (2.0, 100.0, 0.99956277048340045152),
    (2.0, 1000.0, 0.99999562502707009256),
    (5.5, 0.05, 9.2674085538643502951e-10),
    (5.5, 0.3, 0.000024524174379226757722),
    (5.5, 1.0, 0.0079360991425936644988),
    (5.5, 3.0, 0.23457591755634295741),
    (5.5, 8.0, 0.74381723627881949714),
    (5.5, 25.0, 0.96734015162257621766),
    (5.5, 100.0, 0.99790377308348518582),
    (5.5, 1000.0, 0.99997900037799307014),
    (12.0, 0.05, 2.361373135163823357e-21),
    (12.0, 0.3, 5.4068704747998613055e-12),
    (12.0, 1.0, 2.0281100180890424468e-6),
    (12.0, 3.0, 0.0095808820685872051776),
    (12.0, 8.0, 0.33147903543116041125),
    (12.0, 25.0, 0.87626497252904628106),
    (12.0, 100.0, 0.9916096810754556396),
    (12.0, 1000.0, 0.99991562974059217081),
    (40.0, 0.05, 1.8411566606689953424e-77),
    (40.0, 0.3, 1.2672832410034851669e-46),
    (40.0, 1.0, 2.8319825426705695814e-27),
    (40.0, 3.0, 1.1788025802871383366e-12),
    (40.0, 8.0, 0.00016569754520730104274),
    (40.0, 25.0, 0.28274830541213823372),
    (40.0, 100.0, 0.91971906953078894031),
    (40.0, 1000.0, 0.99916001327978402403),
    (80.0, 0.05, 4.9560384467348262088e-165),
    (80.0, 0.3, 2.3692178784107116682e-103),
    (80.0, 1.0, 6.9779885674205573584e-64),
    (80.0, 3.0, 1.9795445632654492041e-32),
    (80.0, 8.0, 1.4690610001551369124e-12),
    (80.0, 25.0, 0.0092862605877539666231),
    (80.0, 100.0, 0.7222500248062041033),
    (80.0, 1000.0, 0.99672526762464227875),
];
