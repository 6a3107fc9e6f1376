"""Gold question / SQL pairs over the fixture databases."""

CORPUS = [
    # dog_kennels
    ("dog_kennels", "How many dogs are there?", "SELECT count(*) FROM dogs"),
    ("dog_kennels", "What is the average age of the dogs who have gone through any treatments?",
     "SELECT avg(age) FROM dogs WHERE dog_id IN (SELECT dog_id FROM treatments)"),
    ("dog_kennels", "What is the average age of the female dogs?", "SELECT avg(age) FROM dogs WHERE sex = 'F'"),
    ("dog_kennels", "List the names of dogs older than 5.", "SELECT name FROM dogs WHERE age > 5"),
    ("dog_kennels", "Which dogs were abandoned? Show their names.", "SELECT name FROM dogs WHERE abandoned_yn = 'Yes'"),
    ("dog_kennels", "Show the names of the dogs of breed Bulldog.",
     "SELECT T2.name FROM breeds AS T1 JOIN dogs AS T2 ON T1.breed_code = T2.breed_code WHERE T1.breed_name = 'Bulldog'"),
    ("dog_kennels", "What are the first names of owners who live in Bradford?", "SELECT first_name FROM owners WHERE city = 'Bradford'"),
    ("dog_kennels", "How many treatments cost more than 200?", "SELECT count(*) FROM treatments WHERE cost_of_treatment > 200"),
    ("dog_kennels", "List each breed code with the number of dogs.", "SELECT breed_code, count(*) FROM dogs GROUP BY breed_code"),
    ("dog_kennels", "What is the name of the heaviest dog?", "SELECT name FROM dogs ORDER BY weight DESC LIMIT 1"),
    ("dog_kennels", "What are the names of dogs born after 2015-01-01?", "SELECT name FROM dogs WHERE date_of_birth > '2015-01-01'"),
    ("dog_kennels", "List the cities of professionals with role code Veterenarian.",
     "SELECT city FROM professionals WHERE role_code = 'Veterenarian'"),
    ("dog_kennels", "What is the total cost of treatments of type VAC?",
     "SELECT sum(cost_of_treatment) FROM treatments WHERE treatment_type = 'VAC'"),
    ("dog_kennels", "Show the names of dogs and the types of their treatments.",
     "SELECT T1.name, T2.treatment_type FROM dogs AS T1 JOIN treatments AS T2 ON T1.dog_id = T2.dog_id"),
    ("dog_kennels", "What are the first names of owners whose dogs are male?",
     "SELECT DISTINCT T2.first_name FROM dogs AS T1 JOIN owners AS T2 ON T1.owner_id = T2.owner_id WHERE T1.sex = 'M'"),
    ("dog_kennels", "How many dogs have an age between 2 and 5?", "SELECT count(*) FROM dogs WHERE age BETWEEN 2 AND 5"),
    ("dog_kennels", "List the treatment types and costs sorted by cost descending.",
     "SELECT treatment_type, cost_of_treatment FROM treatments ORDER BY cost_of_treatment DESC"),
    ("dog_kennels", "What is the age of the dog named Troy?", "SELECT age FROM dogs WHERE name = 'Troy'"),
    ("dog_kennels", "Which states have both owners and professionals?",
     "SELECT state FROM owners INTERSECT SELECT state FROM professionals"),
    ("dog_kennels", "Which professionals have done treatments costing more than 250? Give their first names.",
     "SELECT DISTINCT T1.first_name FROM professionals AS T1 JOIN treatments AS T2 ON T1.professional_id = T2.professional_id "
     "WHERE T2.cost_of_treatment > 250"),
    ("dog_kennels", "List the last names of owners of Husky dogs.",
     "SELECT DISTINCT T3.last_name FROM breeds AS T1 JOIN dogs AS T2 ON T1.breed_code = T2.breed_code "
     "JOIN owners AS T3 ON T2.owner_id = T3.owner_id WHERE T1.breed_name = 'Husky'"),

    # product_catalog
    ("product_catalog", "Which product type codes have an average price higher than the average price of all products?",
     "SELECT product_type_code FROM products GROUP BY product_type_code HAVING avg(product_price) > (SELECT avg(product_price) FROM products)"),
    ("product_catalog", "How many products are there?", "SELECT count(*) FROM products"),
    ("product_catalog", "List the names of products of type Clothes.", "SELECT product_name FROM products WHERE product_type_code = 'Clothes'"),
    ("product_catalog", "What is the price of the most expensive product?", "SELECT max(product_price) FROM products"),
    ("product_catalog", "Show the names of products cheaper than 100.", "SELECT product_name FROM products WHERE product_price < 100"),
    ("product_catalog", "What is the average price of products for each type code?",
     "SELECT product_type_code, avg(product_price) FROM products GROUP BY product_type_code"),
    ("product_catalog", "Which product type has the most products?",
     "SELECT product_type_code FROM products GROUP BY product_type_code ORDER BY count(*) DESC LIMIT 1"),
    ("product_catalog", "Find the names of products whose name contains jeans.",
     "SELECT product_name FROM products WHERE product_name LIKE '%jeans%'"),
    ("product_catalog", "List the distinct product names in alphabetical order.",
     "SELECT DISTINCT product_name FROM products ORDER BY product_name ASC"),
    ("product_catalog", "Which suppliers are located in Austin?", "SELECT supplier_name FROM suppliers WHERE city = 'Austin'"),
    ("product_catalog", "Find the names of products supplied by Lidl.",
     "SELECT T1.product_name FROM products AS T1 JOIN product_suppliers AS T2 ON T1.product_id = T2.product_id "
     "JOIN suppliers AS T3 ON T2.supplier_id = T3.supplier_id WHERE T3.supplier_name = 'Lidl'"),
    ("product_catalog", "How many products have a price between 100 and 700?",
     "SELECT count(*) FROM products WHERE product_price BETWEEN 100 AND 700"),
    ("product_catalog", "What are the type codes of products that cost more than 500 or less than 10?",
     "SELECT DISTINCT product_type_code FROM products WHERE product_price > 500 OR product_price < 10"),
    ("product_catalog", "Give the total amount purchased from each supplier id.",
     "SELECT supplier_id, sum(total_amount_purchased) FROM product_suppliers GROUP BY supplier_id"),

    # employee_hire_evaluation
    ("employee_hire_evaluation", "Which cities have more than one employee younger than 30?",
     "SELECT city FROM employee WHERE age < 30 GROUP BY city HAVING count(*) > 1"),
    ("employee_hire_evaluation", "What is the average age of employees in each shop? Show the shop id too.",
     "SELECT avg(T1.age), T3.shop_id FROM employee AS T1 JOIN hiring AS T2 ON T1.employee_id = T2.employee_id "
     "JOIN shop AS T3 ON T2.shop_id = T3.shop_id GROUP BY T3.shop_id"),
    ("employee_hire_evaluation", "How many employees are there?", "SELECT count(*) FROM employee"),
    ("employee_hire_evaluation", "Sort employee names by ascending age.", "SELECT name FROM employee ORDER BY age ASC"),
    ("employee_hire_evaluation", "What are the cities of employees older than 35?", "SELECT city FROM employee WHERE age > 35"),
    ("employee_hire_evaluation", "Which city has the most employees?",
     "SELECT city FROM employee GROUP BY city ORDER BY count(*) DESC LIMIT 1"),
    ("employee_hire_evaluation", "What is the name of the shop with the most products?",
     "SELECT name FROM shop ORDER BY number_products DESC LIMIT 1"),
    ("employee_hire_evaluation", "Who is the manager of the shop located in Helsinki?",
     "SELECT manager_name FROM shop WHERE location = 'Helsinki'"),
    ("employee_hire_evaluation", "How many shops have more than 5000 products?", "SELECT count(*) FROM shop WHERE number_products > 5000"),
    ("employee_hire_evaluation", "Find the names of employees who have never been hired by a shop.",
     "SELECT name FROM employee WHERE employee_id NOT IN (SELECT employee_id FROM hiring)"),
    ("employee_hire_evaluation", "What is the total bonus given in all evaluations?", "SELECT sum(bonus) FROM evaluation"),
    ("employee_hire_evaluation", "Find the name of the employee who got the highest bonus in a single evaluation.",
     "SELECT T1.name FROM employee AS T1 JOIN evaluation AS T2 ON T1.employee_id = T2.employee_id ORDER BY T2.bonus DESC LIMIT 1"),
    ("employee_hire_evaluation", "For each shop, how many employees are working there? Show the shop names.",
     "SELECT count(*), T2.name FROM hiring AS T1 JOIN shop AS T2 ON T1.shop_id = T2.shop_id GROUP BY T2.name"),
    ("employee_hire_evaluation", "Which employees were awarded in 2016? Give their names.",
     "SELECT T1.name FROM employee AS T1 JOIN evaluation AS T2 ON T1.employee_id = T2.employee_id WHERE T2.year_awarded = '2016'"),
    ("employee_hire_evaluation", "List the names of employees from Bath or Bristol.",
     "SELECT name FROM employee WHERE city = 'Bath' OR city = 'Bristol'"),
    ("employee_hire_evaluation", "How many employees work full time?", "SELECT count(*) FROM hiring WHERE is_full_time = 'T'"),
    ("employee_hire_evaluation", "Count the employees under 30 in each city.",
     "SELECT count(*), city FROM employee WHERE age < 30 GROUP BY city"),
    ("employee_hire_evaluation", "List the name and location of shops ordered by number of products descending.",
     "SELECT name, location FROM shop ORDER BY number_products DESC"),
    ("employee_hire_evaluation", "Which employees started working after 2010? Give their names.",
     "SELECT T1.name FROM employee AS T1 JOIN hiring AS T2 ON T1.employee_id = T2.employee_id WHERE T2.start_from > '2010'"),

    # world_1
    ("world_1", "List the names of all Asian countries.", "SELECT name FROM country WHERE continent = 'Asia'"),
    ("world_1", "How many countries are in Europe?", "SELECT count(*) FROM country WHERE continent = 'Europe'"),
    ("world_1", "What is the population of France?", "SELECT population FROM country WHERE name = 'France'"),
    ("world_1", "What is the average life expectancy of countries in Africa?",
     "SELECT avg(lifeexpectancy) FROM country WHERE continent = 'Africa'"),
    ("world_1", "Which countries have a population larger than 100000000?", "SELECT name FROM country WHERE population > 100000000"),
    ("world_1", "What is the total surface area of the continent Asia?", "SELECT sum(surfacearea) FROM country WHERE continent = 'Asia'"),
    ("world_1", "Which cities are in Japan?",
     "SELECT T1.name FROM city AS T1 JOIN country AS T2 ON T1.countrycode = T2.code WHERE T2.name = 'Japan'"),
    ("world_1", "What languages are spoken in Germany?",
     "SELECT T2.language FROM country AS T1 JOIN countrylanguage AS T2 ON T1.code = T2.countrycode WHERE T1.name = 'Germany'"),
    ("world_1", "How many official languages does Afghanistan have?",
     "SELECT count(*) FROM country AS T1 JOIN countrylanguage AS T2 ON T1.code = T2.countrycode "
     "WHERE T1.name = 'Afghanistan' AND T2.isofficial = 'T'"),
    ("world_1", "Which region is the city Kabul located in?",
     "SELECT T1.region FROM country AS T1 JOIN city AS T2 ON T1.code = T2.countrycode WHERE T2.name = 'Kabul'"),
    ("world_1", "Count the number of countries for each continent.", "SELECT continent, count(*) FROM country GROUP BY continent"),
    ("world_1", "Which continent has the most countries?", "SELECT continent FROM country GROUP BY continent ORDER BY count(*) DESC LIMIT 1"),
    ("world_1", "What are the 3 most populated cities?", "SELECT name FROM city ORDER BY population DESC LIMIT 3"),
    ("world_1", "Which countries have a GNP between 300000 and 500000?", "SELECT name FROM country WHERE gnp BETWEEN 300000 AND 500000"),
    ("world_1", "What are the names of countries that speak Spanish?",
     "SELECT T1.name FROM country AS T1 JOIN countrylanguage AS T2 ON T1.code = T2.countrycode WHERE T2.language = 'Spanish'"),
    ("world_1", "Which countries in Europe have a life expectancy above 78?",
     "SELECT name FROM country WHERE continent = 'Europe' AND lifeexpectancy > 78"),
    ("world_1", "Who is the head of state of Netherlands?", "SELECT headofstate FROM country WHERE name = 'Netherlands'"),
    ("world_1", "Which languages are spoken by more than 2 countries?",
     "SELECT language FROM countrylanguage GROUP BY language HAVING count(*) > 2"),
    ("world_1", "What are the names of countries where English is not spoken?",
     "SELECT name FROM country WHERE code NOT IN (SELECT countrycode FROM countrylanguage WHERE language = 'English')"),
    ("world_1", "What are the names of countries that speak both English and Spanish?",
     "SELECT T1.name FROM country AS T1 JOIN countrylanguage AS T2 ON T1.code = T2.countrycode WHERE T2.language = 'English' "
     "INTERSECT SELECT T1.name FROM country AS T1 JOIN countrylanguage AS T2 ON T1.code = T2.countrycode WHERE T2.language = 'Spanish'"),
    ("world_1", "How many cities in Europe have a population over 1000000?",
     "SELECT count(*) FROM city AS T1 JOIN country AS T2 ON T1.countrycode = T2.code WHERE T2.continent = 'Europe' AND T1.population > 1000000"),
    ("world_1", "Which countries have cities with a population greater than 9000000?",
     "SELECT DISTINCT T2.name FROM city AS T1 JOIN country AS T2 ON T1.countrycode = T2.code WHERE T1.population > 9000000"),

    # concert_singer
    ("concert_singer", "How many singers do we have?", "SELECT count(*) FROM singer"),
    ("concert_singer", "Show name, country, age for all singers ordered by age from the oldest to the youngest.",
     "SELECT name, country, age FROM singer ORDER BY age DESC"),
    ("concert_singer", "What is the average, minimum, and maximum age of all singers from France?",
     "SELECT avg(age), min(age), max(age) FROM singer WHERE country = 'France'"),
    ("concert_singer", "Show the name and the release year of the song by the youngest singer.",
     "SELECT song_name, song_release_year FROM singer ORDER BY age ASC LIMIT 1"),
    ("concert_singer", "What are all distinct countries where singers above age 20 are from?",
     "SELECT DISTINCT country FROM singer WHERE age > 20"),
    ("concert_singer", "Show all countries and the number of singers in each country.",
     "SELECT country, count(*) FROM singer GROUP BY country"),
    ("concert_singer", "List the names of stadiums with capacity between 5000 and 12000.",
     "SELECT name FROM stadium WHERE capacity BETWEEN 5000 AND 12000"),
    ("concert_singer", "What is the maximum capacity of stadiums?", "SELECT max(capacity) FROM stadium"),
    ("concert_singer", "How many concerts are there in year 2014 or 2015?",
     "SELECT count(*) FROM concert WHERE year = '2014' OR year = '2015'"),
    ("concert_singer", "Show the stadium name and the number of concerts in each stadium.",
     "SELECT T2.name, count(*) FROM concert AS T1 JOIN stadium AS T2 ON T1.stadium_id = T2.stadium_id GROUP BY T1.stadium_id"),
    ("concert_singer", "Which stadium has the most concerts?",
     "SELECT T2.name FROM concert AS T1 JOIN stadium AS T2 ON T1.stadium_id = T2.stadium_id GROUP BY T1.stadium_id ORDER BY count(*) DESC LIMIT 1"),
    ("concert_singer", "Show the names of singers who performed in the concert Auditions.",
     "SELECT T3.name FROM concert AS T1 JOIN singer_in_concert AS T2 ON T1.concert_id = T2.concert_id "
     "JOIN singer AS T3 ON T2.singer_id = T3.singer_id WHERE T1.concert_name = 'Auditions'"),
    ("concert_singer", "What are the names of stadiums without any concerts?",
     "SELECT name FROM stadium WHERE stadium_id NOT IN (SELECT stadium_id FROM concert)"),
    ("concert_singer", "Show the song names of singers older than the average age.",
     "SELECT song_name FROM singer WHERE age > (SELECT avg(age) FROM singer)"),
    ("concert_singer", "Which singers have a song name containing Hey?", "SELECT name FROM singer WHERE song_name LIKE '%Hey%'"),
    ("concert_singer", "List the countries that have singers both older than 40 and younger than 30.",
     "SELECT country FROM singer WHERE age > 40 INTERSECT SELECT country FROM singer WHERE age < 30"),
    ("concert_singer", "Show the names of singers whose song was released in 2008.",
     "SELECT name FROM singer WHERE song_release_year = '2008'"),
    ("concert_singer", "What are the names and themes of concerts held in 2015?",
     "SELECT concert_name, theme FROM concert WHERE year = '2015'"),

    # pets_1
    ("pets_1", "Find the number of pets whose weight is heavier than 10.", "SELECT count(*) FROM pets WHERE weight > 10"),
    ("pets_1", "How many dog pets are there?", "SELECT count(*) FROM pets WHERE pettype = 'dog'"),
    ("pets_1", "Find the weight of the youngest dog.", "SELECT weight FROM pets WHERE pettype = 'dog' ORDER BY pet_age ASC LIMIT 1"),
    ("pets_1", "Find the maximum weight for each type of pet.", "SELECT max(weight), pettype FROM pets GROUP BY pettype"),
    ("pets_1", "Find the number of pets owned by students who are older than 20.",
     "SELECT count(*) FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid = T2.stuid WHERE T1.age > 20"),
    ("pets_1", "Find the first names of students who have a cat or a dog.",
     "SELECT DISTINCT T1.fname FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid = T2.stuid JOIN pets AS T3 ON T2.petid = T3.petid "
     "WHERE T3.pettype = 'cat' OR T3.pettype = 'dog'"),
    ("pets_1", "How many female students are there?", "SELECT count(*) FROM student WHERE sex = 'F'"),
    ("pets_1", "Find the first names of students who do not own any pet.",
     "SELECT fname FROM student WHERE stuid NOT IN (SELECT stuid FROM has_pet)"),
    ("pets_1", "What is the average age for each sex of students?", "SELECT avg(age), sex FROM student GROUP BY sex"),
    ("pets_1", "Find the last names of students whose city code is HKG.", "SELECT lname FROM student WHERE city_code = 'HKG'"),
    ("pets_1", "How many students have major 600?", "SELECT count(*) FROM student WHERE major = 600"),
    ("pets_1", "Find the id of the pet owned by the student whose last name is Smith.",
     "SELECT T2.petid FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid = T2.stuid WHERE T1.lname = 'Smith'"),
    ("pets_1", "List the types of pets and their average age.", "SELECT pettype, avg(pet_age) FROM pets GROUP BY pettype"),
    ("pets_1", "List the first names of students older than the average student age.",
     "SELECT fname FROM student WHERE age > (SELECT avg(age) FROM student)"),
    ("pets_1", "How many distinct pet types are there?", "SELECT count(DISTINCT pettype) FROM pets"),
    ("pets_1", "Which major has the most students?", "SELECT major FROM student GROUP BY major ORDER BY count(*) DESC LIMIT 1"),

    # car_1
    ("car_1", "How many car makers are there?", "SELECT count(*) FROM car_makers"),
    ("car_1", "Which makers are from germany?", "SELECT maker FROM car_makers WHERE country = 'germany'"),
    ("car_1", "What is the average horsepower of cars with 8 cylinders?", "SELECT avg(horsepower) FROM cars_data WHERE cylinders = 8"),
    ("car_1", "What is the maximum MPG of cars made in 1980?", "SELECT max(mpg) FROM cars_data WHERE year = 1980"),
    ("car_1", "How many cars have more than 4 cylinders?", "SELECT count(*) FROM cars_data WHERE cylinders > 4"),
    ("car_1", "What is the average weight of cars for each year?", "SELECT year, avg(weight) FROM cars_data GROUP BY year"),
    ("car_1", "List the models made by the maker with full name Toyota.",
     "SELECT T2.model FROM car_makers AS T1 JOIN model_list AS T2 ON T1.id = T2.maker WHERE T1.fullname = 'Toyota'"),
    ("car_1", "How many models does each maker have? Show the full names.",
     "SELECT T1.fullname, count(*) FROM car_makers AS T1 JOIN model_list AS T2 ON T1.id = T2.maker GROUP BY T1.id"),
    ("car_1", "What is the horsepower of the heaviest car?", "SELECT horsepower FROM cars_data ORDER BY weight DESC LIMIT 1"),
    ("car_1", "Which cars have a horsepower between 100 and 150? Show their ids.",
     "SELECT id FROM cars_data WHERE horsepower BETWEEN 100 AND 150"),
    ("car_1", "Which countries have more than two car makers?", "SELECT country FROM car_makers GROUP BY country HAVING count(*) > 2"),
    ("car_1", "What is the average MPG of cars made by ford?",
     "SELECT avg(T3.mpg) FROM car_makers AS T1 JOIN model_list AS T2 ON T1.id = T2.maker JOIN cars_data AS T3 ON T2.modelid = T3.modelid "
     "WHERE T1.maker = 'ford'"),
    ("car_1", "Which cars were made before 1975? Give their MPG.", "SELECT mpg FROM cars_data WHERE year < 1975"),
    ("car_1", "Which country does the maker of the model audi come from?",
     "SELECT T1.country FROM car_makers AS T1 JOIN model_list AS T2 ON T1.id = T2.maker WHERE T2.model = 'audi'"),
    ("car_1", "How many cars are there for each number of cylinders?", "SELECT cylinders, count(*) FROM cars_data GROUP BY cylinders"),
    ("car_1", "List the ids of cars that have fewer than 6 cylinders and weigh less than 3000.",
     "SELECT id FROM cars_data WHERE cylinders < 6 AND weight < 3000"),

    # orchestra
    ("orchestra", "How many conductors are there?", "SELECT count(*) FROM conductor"),
    ("orchestra", "List the names of conductors in ascending order of age.", "SELECT name FROM conductor ORDER BY age ASC"),
    ("orchestra", "What are the names of conductors whose nationalities are not USA?",
     "SELECT name FROM conductor WHERE nationality != 'USA'"),
    ("orchestra", "What are the record companies of orchestras in descending order of the year they were founded?",
     "SELECT record_company FROM orchestra ORDER BY year_of_founded DESC"),
    ("orchestra", "What is the average attendance of shows?", "SELECT avg(attendance) FROM show"),
    ("orchestra", "What is the maximum official rating of performances?", "SELECT max(official_ratings) FROM performance"),
    ("orchestra", "How many shows were first shows?", "SELECT count(*) FROM show WHERE if_first_show = 'Yes'"),
    ("orchestra", "Show the names of conductors and the orchestras they have conducted.",
     "SELECT T1.name, T2.orchestra FROM conductor AS T1 JOIN orchestra AS T2 ON T1.conductor_id = T2.conductor_id"),
    ("orchestra", "Which record company is used by the most orchestras?",
     "SELECT record_company FROM orchestra GROUP BY record_company ORDER BY count(*) DESC LIMIT 1"),
    ("orchestra", "Which orchestras were founded after 2003?", "SELECT orchestra FROM orchestra WHERE year_of_founded > 2003"),
    ("orchestra", "Show the orchestras with record format CD or DVD.",
     "SELECT orchestra FROM orchestra WHERE major_record_format = 'CD' OR major_record_format = 'DVD'"),
    ("orchestra", "What are the names of conductors of orchestras with official ratings above 9.5?",
     "SELECT T1.name FROM conductor AS T1 JOIN orchestra AS T2 ON T1.conductor_id = T2.conductor_id "
     "JOIN performance AS T3 ON T2.orchestra_id = T3.orchestra_id WHERE T3.official_ratings > 9.5"),
    ("orchestra", "What are the results of shows with attendance more than 1000?", "SELECT result FROM show WHERE attendance > 1000"),
    ("orchestra", "What is the average age of conductors from UK?", "SELECT avg(age) FROM conductor WHERE nationality = 'UK'"),

    # museum_visit
    ("museum_visit", "How many visitors below age 30 are there?", "SELECT count(*) FROM visitor WHERE age < 30"),
    ("museum_visit", "Find the names of visitors whose membership level is higher than 4, ordered by the level from high to low.",
     "SELECT name FROM visitor WHERE level_of_membership > 4 ORDER BY level_of_membership DESC"),
    ("museum_visit", "What is the average age of the visitors whose membership level is not higher than 4?",
     "SELECT avg(age) FROM visitor WHERE level_of_membership <= 4"),
    ("museum_visit", "Find the name and number of staff of museums opened after 2010.",
     "SELECT name, num_of_staff FROM museum WHERE open_year > '2010'"),
    ("museum_visit", "Find the ids of museums that have more staff than the minimum staff of museums opened after 2010.",
     "SELECT museum_id FROM museum WHERE num_of_staff > (SELECT min(num_of_staff) FROM museum WHERE open_year > '2010')"),
    ("museum_visit", "What is the average number of staff of museums opened before 2009?",
     "SELECT avg(num_of_staff) FROM museum WHERE open_year < '2009'"),
    ("museum_visit", "What are the opening year and staff number of the museum named Plaza Museum?",
     "SELECT open_year, num_of_staff FROM museum WHERE name = 'Plaza Museum'"),
    ("museum_visit", "Find the names of visitors who visited museums more than 1 time.",
     "SELECT T1.name FROM visitor AS T1 JOIN visit AS T2 ON T1.id = T2.visitor_id GROUP BY T2.visitor_id HAVING count(*) > 1"),
    ("museum_visit", "What is the total number of tickets bought by visitors with membership level 1?",
     "SELECT sum(T2.num_of_ticket) FROM visitor AS T1 JOIN visit AS T2 ON T1.id = T2.visitor_id WHERE T1.level_of_membership = 1"),
    ("museum_visit", "Find the name of the visitor who spent the largest amount of money in total.",
     "SELECT T1.name FROM visitor AS T1 JOIN visit AS T2 ON T1.id = T2.visitor_id GROUP BY T2.visitor_id ORDER BY sum(T2.total_spent) DESC LIMIT 1"),
    ("museum_visit", "How many museums were opened after 2013 or before 2008?",
     "SELECT count(*) FROM museum WHERE open_year > '2013' OR open_year < '2008'"),
    ("museum_visit", "What are the average and maximum number of tickets bought in all visits?",
     "SELECT avg(num_of_ticket), max(num_of_ticket) FROM visit"),
    ("museum_visit", "Which museums were never visited? Give their names.",
     "SELECT name FROM museum WHERE museum_id NOT IN (SELECT museum_id FROM visit)"),
    ("museum_visit", "Find the names of visitors older than 30 whose membership level is above 5.",
     "SELECT name FROM visitor WHERE age > 30 AND level_of_membership > 5"),

    # poker_player
    ("poker_player", "How many poker players are there?", "SELECT count(*) FROM poker_player"),
    ("poker_player", "List the earnings of poker players in descending order.", "SELECT earnings FROM poker_player ORDER BY earnings DESC"),
    ("poker_player", "List the final tables made and the best finishes of all poker players.",
     "SELECT final_table_made, best_finish FROM poker_player"),
    ("poker_player", "What is the average earnings of poker players?", "SELECT avg(earnings) FROM poker_player"),
    ("poker_player", "What is the money rank of the player with the highest earnings?",
     "SELECT money_rank FROM poker_player ORDER BY earnings DESC LIMIT 1"),
    ("poker_player", "What is the maximum number of final tables made among players with earnings less than 200000?",
     "SELECT max(final_table_made) FROM poker_player WHERE earnings < 200000"),
    ("poker_player", "What are the names of poker players?",
     "SELECT T1.name FROM people AS T1 JOIN poker_player AS T2 ON T1.people_id = T2.people_id"),
    ("poker_player", "What are the names of poker players whose earnings are higher than 300000?",
     "SELECT T1.name FROM people AS T1 JOIN poker_player AS T2 ON T1.people_id = T2.people_id WHERE T2.earnings > 300000"),
    ("poker_player", "What are the birth dates of people from Bulgaria?", "SELECT birth_date FROM people WHERE nationality = 'Bulgaria'"),
    ("poker_player", "Show the nationalities and the number of people from each nationality.",
     "SELECT nationality, count(*) FROM people GROUP BY nationality"),
    ("poker_player", "Which people were born after May 1, 1982? Give their names.",
     "SELECT name FROM people WHERE birth_date > '1982-05-01'"),
    ("poker_player", "What is the name of the tallest person?", "SELECT name FROM people ORDER BY height DESC LIMIT 1"),
    ("poker_player", "How many people are not poker players?",
     "SELECT count(*) FROM people WHERE people_id NOT IN (SELECT people_id FROM poker_player)"),
    ("poker_player", "Which people are taller than 195? Show their names and birth dates.",
     "SELECT name, birth_date FROM people WHERE height > 195"),

    # library
    ("library", "How many books are there?", "SELECT count(*) FROM books"),
    ("library", "Which books are available? Give their titles.", "SELECT title FROM books WHERE available = 'Yes'"),
    ("library", "List the titles of books written by Jane Austen.", "SELECT title FROM books WHERE author = 'Jane Austen'"),
    ("library", "What are the titles of books published before 1900?", "SELECT title FROM books WHERE year < 1900"),
    ("library", "How many books are there in each genre?", "SELECT genre, count(*) FROM books GROUP BY genre"),
    ("library", "Which genre has the most books?", "SELECT genre FROM books GROUP BY genre ORDER BY count(*) DESC LIMIT 1"),
    ("library", "Which members live in Austin?", "SELECT name FROM members WHERE city = 'Austin'"),
    ("library", "Which members joined after 2016-01-01?", "SELECT name FROM members WHERE join_date > '2016-01-01'"),
    ("library", "What are the titles of books borrowed by Ada Byron?",
     "SELECT T1.title FROM books AS T1 JOIN loans AS T2 ON T1.book_id = T2.book_id JOIN members AS T3 ON T2.member_id = T3.member_id "
     "WHERE T3.name = 'Ada Byron'"),
    ("library", "How many loans have not been returned?", "SELECT count(*) FROM loans WHERE returned = 'No'"),
    ("library", "What is the earliest publication year of the books?", "SELECT min(year) FROM books"),
    ("library", "List the titles of books and the names of the members who borrowed them.",
     "SELECT T1.title, T3.name FROM books AS T1 JOIN loans AS T2 ON T1.book_id = T2.book_id JOIN members AS T3 ON T2.member_id = T3.member_id"),
    ("library", "Which authors wrote more than one book?", "SELECT author FROM books GROUP BY author HAVING count(*) > 1"),
    ("library", "Which authors have a name containing King?", "SELECT author FROM books WHERE author LIKE '%King%'"),
    ("library", "How many loans does each member have? Show the member names.",
     "SELECT T2.name, count(*) FROM loans AS T1 JOIN members AS T2 ON T1.member_id = T2.member_id GROUP BY T1.member_id"),
    ("library", "Which books have never been loaned? Give their titles.",
     "SELECT title FROM books WHERE book_id NOT IN (SELECT book_id FROM loans)"),

    # college_1
    ("college_1", "How many departments are there?", "SELECT count(*) FROM department"),
    ("college_1", "What are the names of instructors in the Finance department?",
     "SELECT T2.name FROM department AS T1 JOIN instructor AS T2 ON T1.dept_id = T2.dept_id WHERE T1.dept_name = 'Finance'"),
    ("college_1", "List the names and salaries of instructors ordered by salary.", "SELECT name, salary FROM instructor ORDER BY salary ASC"),
    ("college_1", "What is the average salary of instructors?", "SELECT avg(salary) FROM instructor"),
    ("college_1", "Which departments have a budget above 85000?", "SELECT dept_name FROM department WHERE budget > 85000"),
    ("college_1", "What is the total budget of departments in the Watson building?",
     "SELECT sum(budget) FROM department WHERE building = 'Watson'"),
    ("college_1", "How many courses have 4 credits?", "SELECT count(*) FROM course WHERE credits = 4"),
    ("college_1", "What are the titles of courses offered by the Biology department?",
     "SELECT T1.title FROM course AS T1 JOIN department AS T2 ON T1.dept_id = T2.dept_id WHERE T2.dept_name = 'Biology'"),
    ("college_1", "Which department has the highest budget?", "SELECT dept_name FROM department ORDER BY budget DESC LIMIT 1"),
    ("college_1", "Find the number of instructors in each department. Show the department names.",
     "SELECT T1.dept_name, count(*) FROM department AS T1 JOIN instructor AS T2 ON T1.dept_id = T2.dept_id GROUP BY T2.dept_id"),
    ("college_1", "Which departments offer more than 2 courses?",
     "SELECT T2.dept_name FROM course AS T1 JOIN department AS T2 ON T1.dept_id = T2.dept_id GROUP BY T1.dept_id HAVING count(*) > 2"),
    ("college_1", "Which instructors earn more than the average salary?",
     "SELECT name FROM instructor WHERE salary > (SELECT avg(salary) FROM instructor)"),
    ("college_1", "Find the names of instructors with a salary between 60000 and 80000.",
     "SELECT name FROM instructor WHERE salary BETWEEN 60000 AND 80000"),
    ("college_1", "List the distinct buildings of departments.", "SELECT DISTINCT building FROM department"),
    ("college_1", "What are the titles of courses in departments with a budget above 90000?",
     "SELECT T1.title FROM course AS T1 JOIN department AS T2 ON T1.dept_id = T2.dept_id WHERE T2.budget > 90000"),
    ("college_1", "Which instructors work in the department that offers the Robotics course?",
     "SELECT T3.name FROM course AS T1 JOIN department AS T2 ON T1.dept_id = T2.dept_id JOIN instructor AS T3 ON T2.dept_id = T3.dept_id "
     "WHERE T1.title = 'Robotics'"),
]
