"""Seeded test-curve corpus (regenerate with scripts/make_corpus.py).

Roots live in the annulus 0.5 <= |r| <= 2 with separation >= 0.2 and
are ordered by real part; every entry (and its alternative ordering)
passed the period pipeline and the divisor dictionary at generation
time."""

CORPUS = {
    1: [
        {'seed': 100, 'roots': [(-0.7670262446663243, -0.5317048433394889), (1.3757643300820626, -0.22983937757005515), (1.6890414415847956, 0.46722444470800545)], 'alt_order': [2, 1, 0]},
        {'seed': 101, 'roots': [(-1.60884612690883, -1.0392225333968081), (-0.2856960984283664, 0.9990856407605397), (1.4833702903947452, -0.7827130077545964)], 'alt_order': [0, 1, 2]},
        {'seed': 102, 'roots': [(-1.691256271795388, 0.3905102029714805), (-0.548432127722927, -1.2651598829215671), (-0.21652019646111026, 0.707601121120099)], 'alt_order': [2, 0, 1]},
        {'seed': 103, 'roots': [(-1.4821851463473856, 0.1739494876392804), (-0.8651912960227214, 0.35088157309847556), (-0.09761138494669525, -1.5488709101027018)], 'alt_order': [2, 0, 1]},
        {'seed': 104, 'roots': [(-1.0881607935977697, 1.0872137298738858), (0.020133450891627838, -0.8238872770503416), (1.239764643815999, 1.2461984078480002)], 'alt_order': [0, 2, 1]},
        {'seed': 105, 'roots': [(-1.5811353888679691, 1.203716594421317), (-1.4560002202107196, -0.06136976265167481), (0.17601639518462067, 0.6206164143703401)], 'alt_order': [2, 1, 0]},
        {'seed': 106, 'roots': [(-1.9240733189070989, 0.4394147633341221), (0.4400773589030941, 0.5238647135725669), (0.5466672739380043, -0.12420752288728801)], 'alt_order': [1, 2, 0]},
        {'seed': 107, 'roots': [(-1.2146624258496854, 0.06743423498850523), (-0.1405939879951996, -1.466077964104485), (1.1118810129700882, 0.5800884889637714)], 'alt_order': [2, 0, 1]},
        {'seed': 108, 'roots': [(-1.0543325822728267, 1.4390989251564885), (0.08995754905081978, 1.4456165066186173), (0.6014637322171047, 0.31044900560534755)], 'alt_order': [2, 0, 1]},
        {'seed': 109, 'roots': [(-1.4304243939958539, -1.0290428677299432), (-0.6456145600314387, 1.1463072834466987), (0.5552767939496256, 1.5273059824048156)], 'alt_order': [1, 2, 0]},
        {'seed': 110, 'roots': [(-1.895554160702583, -0.026487803256355878), (0.08085203957913444, 1.266077682738381), (1.1187002348199258, -1.0998164154119487)], 'alt_order': [2, 1, 0]},
        {'seed': 111, 'roots': [(-0.3986796449061873, -0.6121055075478999), (0.08311553649643647, -0.7493596442239648), (0.9739187516112487, 0.7977646795798934)], 'alt_order': [0, 2, 1]},
        {'seed': 112, 'roots': [(-1.6975892599172582, 0.03780381232263444), (0.6706619970034047, 0.0736008433104003), (1.5637973707745654, 0.8210404776273115)], 'alt_order': [2, 1, 0]},
        {'seed': 113, 'roots': [(-0.7029527362186728, 0.18268583844731073), (-0.4656292532344297, -0.3876395405489769), (0.717125601219101, -0.00515606942795872)], 'alt_order': [1, 2, 0]},
        {'seed': 114, 'roots': [(-0.7031969435616294, -0.9100492531326705), (-0.5543714438876856, -0.4487557361251742), (-0.4526273117004315, -1.5261254679242182)], 'alt_order': [2, 0, 1]},
        {'seed': 115, 'roots': [(0.6715661314608088, -1.4008508281955232), (0.9717905699793253, 0.8877762133724326), (1.4055470811563195, 0.006815902909386082)], 'alt_order': [1, 2, 0]},
        {'seed': 116, 'roots': [(-1.813267317871954, -0.08762245690895136), (-1.5779224558002014, -1.1213186557096948), (0.7226804041362088, -0.23051721997347274)], 'alt_order': [0, 2, 1]},
        {'seed': 117, 'roots': [(-1.1594287446201013, 1.3931780869154682), (-0.7342295636229207, -0.06174819163009777), (-0.4550066720994976, 1.3304370809424049)], 'alt_order': [0, 2, 1]},
        {'seed': 118, 'roots': [(-1.871708538376082, -0.3617323668223842), (0.40811438546788636, 1.8515910315699036), (0.8921070306629624, 0.209304029902949)], 'alt_order': [0, 1, 2]},
        {'seed': 119, 'roots': [(0.06662653312785417, -1.5967789076866286), (1.1994178194469214, 1.5176125400102496), (1.7091131463441396, 0.2583317747516615)], 'alt_order': [2, 1, 0]},
    ],
    2: [
        {'seed': 200, 'roots': [(-1.4745320574024217, -0.25181750863212765), (-1.3949317611540222, -0.46454711112864916), (-0.9311054695137941, 0.9916193793946884), (-0.3834315968733543, 0.3870974477116297), (0.7114861587362964, 0.28581187632356303)], 'alt_order': [4, 2, 3, 0, 1]},
        {'seed': 201, 'roots': [(-1.9708988883768683, -0.24526156223235604), (-1.1882227447891334, -0.3274333453944351), (0.7577950735496966, 1.0623752197812792), (1.0633209864663364, -0.8920683019722523), (1.472387402426683, -0.4013570677051556)], 'alt_order': [2, 1, 4, 3, 0]},
        {'seed': 202, 'roots': [(-1.073912298976273, -0.4528410389976301), (-0.9481770382437968, 0.3744334084861626), (0.3584069255071789, 1.4887017236516364), (0.8167390970337396, -0.4864686327318552), (0.8935565411900098, -1.4739288970174147)], 'alt_order': [0, 1, 4, 3, 2]},
        {'seed': 203, 'roots': [(-0.7485773154433594, -0.6876242343843976), (-0.5858871452290587, 0.23475183581837636), (-0.1871653032473127, -0.8255172189507028), (0.7285108454696317, -0.6487624131101998), (1.0825140528209123, -1.2734951920142106)], 'alt_order': [3, 1, 2, 0, 4]},
        {'seed': 204, 'roots': [(-0.19795574199360377, 1.4141047161400957), (0.04379686158959845, -0.5136526654430013), (0.3899024158188107, 1.2450279574660743), (0.8231365939160924, -0.1518800137405303), (1.6018770940551759, 0.6207942359684464)], 'alt_order': [0, 1, 3, 2, 4]},
        {'seed': 205, 'roots': [(-0.8189346243566036, 0.19611831128344664), (-0.5892563658465778, 0.5195405411758924), (1.1047793628932845, -0.22873303959056357), (1.2296316793062523, 1.398601750569938), (1.4397561640966172, 0.9674885569513251)], 'alt_order': [1, 3, 0, 2, 4]},
    ],
    3: [
        {'seed': 300, 'roots': [(-1.5705644720091545, 0.4358539263740578), (-1.3336248621224085, -0.12942813765185465), (-1.0039397341424225, -0.36921820965538854), (-0.509800206629728, -1.4166156881216443), (-0.2687500319928511, 0.8355187016371424), (1.0898037954085227, -0.5410524577889527), (1.4519301792053942, -0.9712987562873489)], 'alt_order': [5, 6, 0, 4, 1, 2, 3]},
        {'seed': 301, 'roots': [(-1.7861599506733374, -0.38212625883279727), (-0.8885956995290842, -0.5037256186063332), (-0.5567434498138139, 1.8064627625235516), (-0.3408375753088227, -0.5507476672724706), (0.7973225194575475, 0.07044939268725842), (1.0642478460506728, 0.28252776742604646), (1.5947137553630504, -0.12628797982166395)], 'alt_order': [2, 0, 1, 5, 6, 4, 3]},
        {'seed': 302, 'roots': [(-0.4284488621559741, -1.5826507768040898), (-0.32440230332594144, 0.8062206390005988), (0.765447027636153, -0.18315887709981377), (0.9571458224832615, -1.230504096033861), (1.0194298256606085, 0.8613608916029122), (1.030602450580961, 1.1687186797858717), (1.993042378222293, -0.13193787893612502)], 'alt_order': [5, 4, 2, 1, 6, 3, 0]},
    ],
}
